use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// The K nearest reference rows of a query, nearest first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionOfCompetence {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
}

impl RegionOfCompetence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The region restricted to its `k` nearest members.
    pub fn truncated(&self, k: usize) -> RegionOfCompetence {
        let k = k.min(self.len());
        RegionOfCompetence {
            indices: self.indices[..k].to_vec(),
            distances: self.distances[..k].to_vec(),
        }
    }
}

#[inline]
pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_euclidean(a, b).sqrt()
}

/// Euclidean distance between two feature vectors of equal length.
pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(distance(a, b))
}

/// Orders candidate neighbours by distance, then by lower row index.
#[inline]
pub(crate) fn neighbor_order(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// The `k` rows of `reference` nearest to `query`.
///
/// `exclude` drops one row from consideration (leave-one-out). Equal
/// distances are resolved towards the lower row index.
pub fn knn(
    query: &[f64],
    reference: &Dataset,
    k: usize,
    exclude: Option<usize>,
) -> Result<RegionOfCompetence> {
    if query.len() != reference.dims() {
        return Err(Error::DimensionMismatch {
            expected: reference.dims(),
            got: query.len(),
        });
    }
    let usable = reference.len() - usize::from(exclude.is_some_and(|e| e < reference.len()));
    if k == 0 || k > usable {
        return Err(Error::NotEnoughNeighbors {
            k,
            available: usable,
        });
    }
    let mut cands: Vec<(f64, usize)> = reference
        .rows()
        .enumerate()
        .filter(|&(i, _)| Some(i) != exclude)
        .map(|(i, r)| (distance(query, r), i))
        .collect();
    if k < cands.len() {
        cands.select_nth_unstable_by(k - 1, neighbor_order);
        cands.truncate(k);
    }
    cands.sort_unstable_by(neighbor_order);
    Ok(RegionOfCompetence {
        indices: cands.iter().map(|c| c.1).collect(),
        distances: cands.iter().map(|c| c.0).collect(),
    })
}

/// Majority vote over neighbour labels given nearest first.
///
/// A tie between classes goes to whichever tied class appears first, i.e.
/// the class of the nearest neighbour among the tied classes.
pub(crate) fn majority_label(labels: impl Iterator<Item = usize> + Clone, num_classes: usize) -> usize {
    let mut votes = vec![0usize; num_classes];
    for l in labels.clone() {
        votes[l] += 1;
    }
    let best = votes.iter().copied().max().unwrap_or(0);
    labels
        .into_iter()
        .find(|&l| votes[l] == best)
        .unwrap_or(0)
}

/// KNN majority-vote classification of `query` against `reference`.
pub fn knn_classify(
    query: &[f64],
    reference: &Dataset,
    k: usize,
    exclude: Option<usize>,
) -> Result<usize> {
    let region = knn(query, reference, k, exclude)?;
    Ok(majority_label(
        region.indices.iter().map(|&i| reference.label(i)),
        reference.num_classes(),
    ))
}
