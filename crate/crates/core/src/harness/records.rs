use std::io::{BufRead, BufReader, Read, Write};

use super::RunRecord;
use crate::error::{Error, Result};

/// First line of every records file.
pub const RECORDS_HEADER: &str = "# dsel-edit records v1";

/// Writes records as CSV under the versioned header line. Floats use the
/// shortest representation that reads back to the same bits.
pub fn write_records(records: &[RunRecord], out: impl Write) -> Result<()> {
    let mut out = out;
    writeln!(out, "{RECORDS_HEADER}").map_err(|e| Error::Serialization(e.to_string()))?;
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))
}

/// Reads what [`write_records`] wrote; any other header version is
/// rejected.
pub fn read_records(input: impl Read) -> Result<Vec<RunRecord>> {
    let mut input = BufReader::new(input);
    let mut first = String::new();
    input
        .read_line(&mut first)
        .map_err(|e| Error::Serialization(e.to_string()))?;
    if first.trim_end() != RECORDS_HEADER {
        return Err(Error::Serialization(format!(
            "expected {RECORDS_HEADER:?} as the first line, found {:?}",
            first.trim_end()
        )));
    }
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(|e| Error::Serialization(e.to_string())))
        .collect()
}
