use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};

fn sniff_delimiter(text: &str) -> u8 {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.matches(';').count() > first.matches(',').count() {
        b';'
    } else {
        b','
    }
}

fn parse_value(field: &str) -> Option<f64> {
    let f = field.trim();
    if f.is_empty() || f == "?" {
        return None;
    }
    f.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses delimited text: comma or semicolon separated, optional header,
/// last column is the class label, all other columns numeric.
///
/// Labels become dense ids in order of first appearance. Row and column
/// numbers in errors are 1-based and count the header line if present.
pub fn parse_delimited(text: &str, name: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(sniff_delimiter(text))
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let parse_err = |row: usize, column: usize, message: String| Error::Parse {
        path: name.to_string(),
        row,
        column,
        message,
    };

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut dims: Option<usize> = None;

    for (line, rec) in reader.records().enumerate() {
        let row = line + 1;
        let rec = rec.map_err(|e| parse_err(row, 0, e.to_string()))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        if rec.len() < 2 {
            return Err(parse_err(row, 1, "need at least one feature and a label".into()));
        }
        let n_feat = rec.len() - 1;
        let is_first = dims.is_none() && labels.is_empty();
        if is_first && (0..n_feat).all(|j| rec[j].parse::<f64>().is_err()) {
            // A leading row without a single numeric feature is a header.
            dims = Some(n_feat);
            continue;
        }
        match dims {
            Some(d) if d != n_feat => {
                return Err(parse_err(
                    row,
                    rec.len(),
                    format!("expected {} columns, found {}", d + 1, rec.len()),
                ))
            }
            _ => dims = Some(n_feat),
        }
        for j in 0..n_feat {
            let v = parse_value(&rec[j]).ok_or_else(|| {
                parse_err(row, j + 1, format!("missing or non-numeric value {:?}", &rec[j]))
            })?;
            features.push(v);
        }
        let label = rec[n_feat].to_string();
        if label.is_empty() || label == "?" {
            return Err(parse_err(row, n_feat + 1, "missing class label".into()));
        }
        let next = ids.len();
        let id = *ids.entry(label.clone()).or_insert_with(|| {
            names.push(label);
            next
        });
        labels.push(id);
    }

    let dims = dims.ok_or_else(|| Error::InvalidDataset(format!("{name}: no data rows")))?;
    let n_classes = names.len();
    Dataset::from_flat(name, features, dims, labels, Some(n_classes))?.with_class_names(names)
}

/// Loads a dataset file; the dataset is named after the file stem.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_delimited(&text, &path.display().to_string()).map(|d| d.with_name(stem))
}

/// Writes a dataset in the comma-separated format read by [`load_csv`],
/// with a header line and class names in the last column.
pub fn write_csv(data: &Dataset, out: &mut impl Write) -> std::io::Result<()> {
    let header: Vec<String> = (0..data.dims())
        .map(|j| format!("x{j}"))
        .chain(std::iter::once("class".to_string()))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for (row, &l) in data.rows().zip(data.labels()) {
        for v in row {
            write!(out, "{v},")?;
        }
        writeln!(out, "{}", data.class_names()[l])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_and_string_labels() {
        let d = parse_delimited("a,b,cls\n1,2,yes\n3,4,no\n5,6,yes\n", "t").unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.dims(), 2);
        assert_eq!(d.labels(), &[0, 1, 0]);
        assert_eq!(d.class_names(), &["yes".to_string(), "no".to_string()]);
    }

    #[test]
    fn parses_semicolons_without_header() {
        let d = parse_delimited("1.5;2;7\n3;4;3\n", "t").unwrap();
        assert_eq!(d.row(0), &[1.5, 2.0]);
        assert_eq!(d.class_names(), &["7".to_string(), "3".to_string()]);
    }

    #[test]
    fn missing_value_names_row_and_column() {
        let err = parse_delimited("x,y,c\n1,2,a\n3,,b\n", "f.csv").unwrap_err();
        match err {
            Error::Parse { row, column, .. } => assert_eq!((row, column), (3, 2)),
            e => panic!("unexpected {e}"),
        }
        let err = parse_delimited("1,?,a\n", "f.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { row: 1, column: 2, .. }));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_delimited("1,2,a\n3,b\n", "f").is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let d = parse_delimited("a,b,c\n0.1,2e-3,x\n-4,5.25,y\n", "t").unwrap();
        let mut buf = Vec::new();
        write_csv(&d, &mut buf).unwrap();
        let back = parse_delimited(std::str::from_utf8(&buf).unwrap(), "t").unwrap();
        assert_eq!(d, back);
    }
}
