//! Datasets and the nearest-neighbour machinery shared by every other module.

mod io;
pub(crate) mod knn;
mod scale;
mod split;

pub use io::{load_csv, parse_delimited, write_csv};
pub use knn::{euclidean, knn, knn_classify, squared_euclidean, RegionOfCompetence};
pub use scale::Scaler;
pub use split::{stratified_holdout, SplitSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense feature matrix with integer class labels.
///
/// Features are stored row-major. Labels are dense ids in `0..num_classes`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    name: String,
    features: Vec<f64>,
    n_dims: usize,
    labels: Vec<usize>,
    num_classes: usize,
    class_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from row-major features.
    ///
    /// `num_classes` defaults to `max(label) + 1`.
    pub fn from_flat(
        name: impl Into<String>,
        features: Vec<f64>,
        n_dims: usize,
        labels: Vec<usize>,
        num_classes: Option<usize>,
    ) -> Result<Self> {
        if n_dims == 0 {
            return Err(Error::InvalidDataset("zero feature dimensions".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidDataset("no rows".into()));
        }
        if features.len() != labels.len() * n_dims {
            return Err(Error::InvalidDataset(format!(
                "{} feature values do not form {} rows of {} dims",
                features.len(),
                labels.len(),
                n_dims
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value at row {}, column {}",
                pos / n_dims,
                pos % n_dims
            )));
        }
        let max_label = labels.iter().copied().max().unwrap_or(0);
        let num_classes = num_classes.unwrap_or(max_label + 1);
        if max_label >= num_classes {
            return Err(Error::InvalidDataset(format!(
                "label {max_label} is not below num_classes {num_classes}"
            )));
        }
        Ok(Dataset {
            name: name.into(),
            features,
            n_dims,
            labels,
            num_classes,
            class_names: (0..num_classes).map(|c| c.to_string()).collect(),
        })
    }

    /// Builds a dataset from a list of rows.
    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<f64>],
        labels: Vec<usize>,
        num_classes: Option<usize>,
    ) -> Result<Self> {
        let n_dims = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_dims) {
            return Err(Error::InvalidDataset(format!(
                "row {i} has {} values, expected {n_dims}",
                r.len()
            )));
        }
        if rows.len() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let flat = rows.iter().flatten().copied().collect();
        Self::from_flat(name, flat, n_dims, labels, num_classes)
    }

    /// Replaces the generic class names with user-facing ones.
    pub fn with_class_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_classes {
            return Err(Error::InvalidDataset(format!(
                "{} class names for {} classes",
                names.len(),
                self.num_classes
            )));
        }
        self.class_names = names;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.n_dims
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_dims..(i + 1) * self.n_dims]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.features.chunks_exact(self.n_dims)
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Instance count per class id.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Rows at `indices`, in the given order. Class metadata is preserved.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(indices.len() * self.n_dims);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Dataset {
            name: self.name.clone(),
            features,
            n_dims: self.n_dims,
            labels,
            num_classes: self.num_classes,
            class_names: self.class_names.clone(),
        }
    }

    pub(crate) fn features_mut(&mut self) -> &mut [f64] {
        &mut self.features
    }
}
