use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Per-dimension z-score standardization.
///
/// Dimensions with zero variance keep divisor 1, so they are only centred.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub std_devs: Vec<f64>,
}

impl Scaler {
    pub fn fit(train: &Dataset) -> Scaler {
        let d = train.dims();
        let n = train.len() as f64;
        let mut means = vec![0.0; d];
        for row in train.rows() {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for row in train.rows() {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        let std_devs = var
            .into_iter()
            .map(|s| {
                let sd = (s / n).sqrt();
                if sd > 0.0 && sd.is_finite() {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Scaler { means, std_devs }
    }

    pub fn transform(&self, data: &Dataset) -> Result<Dataset> {
        if data.dims() != self.means.len() {
            return Err(Error::DimensionMismatch {
                expected: self.means.len(),
                got: data.dims(),
            });
        }
        let mut out = data.clone();
        let d = self.means.len();
        for row in out.features_mut().chunks_exact_mut(d) {
            self.transform_row_in_place(row);
        }
        Ok(out)
    }

    pub fn transform_row_in_place(&self, row: &mut [f64]) {
        for ((v, m), s) in row.iter_mut().zip(&self.means).zip(&self.std_devs) {
            *v = (*v - m) / s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_dimension_is_centred_only() {
        let d = Dataset::from_rows("c", &[vec![2.0, 1.0], vec![2.0, 3.0]], vec![0, 1], None).unwrap();
        let s = Scaler::fit(&d);
        assert_eq!(s.std_devs[0], 1.0);
        let t = s.transform(&d).unwrap();
        assert_eq!(t.row(0), &[0.0, -1.0]);
        assert_eq!(t.row(1), &[0.0, 1.0]);
    }

    proptest! {
        #[test]
        fn training_data_is_standardized(vals in proptest::collection::vec(-1e3f64..1e3, 6..120)) {
            let n = vals.len() / 3;
            let d = Dataset::from_flat("p", vals[..n * 3].to_vec(), 3, vec![0; n], None).unwrap();
            let s = Scaler::fit(&d);
            let t = s.transform(&d).unwrap();
            for j in 0..3 {
                let col: Vec<f64> = t.rows().map(|r| r[j]).collect();
                let mean = col.iter().sum::<f64>() / n as f64;
                prop_assert!(mean.abs() < 1e-9);
                if s.std_devs[j] != 1.0 || col.iter().any(|v| *v != 0.0) {
                    let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
                    if var > 0.0 {
                        prop_assert!((var - 1.0).abs() < 1e-6);
                    }
                }
            }
        }
    }
}
