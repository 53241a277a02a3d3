//! Subset selections over DSEL rows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};

/// One bit per DSEL row; set bits are the rows kept in DSEL'.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelectionMask {
    bits: Vec<bool>,
    retained: usize,
}

impl SelectionMask {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let retained = bits.iter().filter(|&&b| b).count();
        SelectionMask { bits, retained }
    }

    /// Keeps every row.
    pub fn full(n: usize) -> Self {
        Self::from_bits(vec![true; n])
    }

    pub fn empty(n: usize) -> Self {
        Self::from_bits(vec![false; n])
    }

    /// Keeps exactly the listed rows.
    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut bits = vec![false; n];
        for &i in indices {
            bits[i] = true;
        }
        Self::from_bits(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn retained_count(&self) -> usize {
        self.retained
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.bits[i] != value {
            self.bits[i] = value;
            if value {
                self.retained += 1;
            } else {
                self.retained -= 1;
            }
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = !self.bits[i];
        self.set(i, v);
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices of retained rows, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    /// `1 - retained / N`.
    pub fn reduction_rate(&self) -> f64 {
        if self.bits.is_empty() {
            return 0.0;
        }
        1.0 - self.retained as f64 / self.bits.len() as f64
    }

    pub fn hamming(&self, other: &SelectionMask) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// DSEL' in original row order.
    pub fn apply(&self, data: &Dataset) -> Result<Dataset> {
        if data.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: data.len(),
                got: self.len(),
            });
        }
        Ok(data.subset(&self.indices()))
    }
}

/// Serialized as `<bit-string> <retained-count>`, e.g. `10110 3`.
impl fmt::Display for SelectionMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "{s} {}", self.retained)
    }
}

impl FromStr for SelectionMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let bits_str = parts.next().unwrap_or("");
        let bits = bits_str
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::Serialization(format!("bad mask character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        let mask = SelectionMask::from_bits(bits);
        if let Some(count) = parts.next() {
            let count: usize = count
                .parse()
                .map_err(|_| Error::Serialization(format!("bad retained count {count:?}")))?;
            if count != mask.retained {
                return Err(Error::Serialization(format!(
                    "retained count {count} does not match {} set bits",
                    mask.retained
                )));
            }
        }
        Ok(mask)
    }
}
