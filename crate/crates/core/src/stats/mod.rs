//! Comparison statistics over replicated (dataset, DS method, PS method)
//! accuracy tables: win/tie/loss with the sign test, Friedman average ranks,
//! the Bonferroni-Dunn critical difference and Kruskal-Wallis.

mod kruskal;
mod rank;
mod sign;

use std::collections::{BTreeMap, BTreeSet};

use crate::dynselect::DsMethod;
use crate::error::{Error, Result};
use crate::ps::PsMethod;

pub use kruskal::{kruskal_wallis, KruskalWallis, KW_ALPHA};
pub use rank::{bonferroni_dunn_cd, friedman_ranks, q_alpha};
pub use sign::{
    reported_critical, sign_test_critical, sign_test_significant, win_tie_loss, WinTieLoss, DEFAULT_TIE_TOLERANCE,
    DEFAULT_Z_ALPHA,
};

/// A block of the design: one dataset under one DS method.
pub type Cell = (String, DsMethod);

/// Accuracy per (dataset, DS method, PS method, replication).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComparisonTable {
    records: BTreeMap<(String, DsMethod, PsMethod, u32), f64>,
}

impl ComparisonTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one accuracy. Duplicated keys and non-finite values are rejected.
    pub fn insert(&mut self, dataset: &str, ds: DsMethod, ps: PsMethod, replication: u32, accuracy: f64) -> Result<()> {
        if !accuracy.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite accuracy for {dataset}/{ds}/{ps}/{replication}"
            )));
        }
        let key = (dataset.to_string(), ds, ps, replication);
        if self.records.insert(key, accuracy).is_some() {
            return Err(Error::InvalidParameter(format!(
                "duplicate record {dataset}/{ds}/{ps}/{replication}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn datasets(&self) -> BTreeSet<String> {
        self.records.keys().map(|k| k.0.clone()).collect()
    }

    pub fn ds_methods(&self) -> BTreeSet<DsMethod> {
        self.records.keys().map(|k| k.1).collect()
    }

    pub fn ps_methods(&self) -> BTreeSet<PsMethod> {
        self.records.keys().map(|k| k.2).collect()
    }

    pub fn replications(&self) -> BTreeSet<u32> {
        self.records.keys().map(|k| k.3).collect()
    }

    /// Every (dataset, DS method) pair with at least one record.
    pub fn cells(&self) -> Vec<Cell> {
        let set: BTreeSet<Cell> = self.records.keys().map(|k| (k.0.clone(), k.1)).collect();
        set.into_iter().collect()
    }

    /// Accuracies of one (cell, PS method) across replications, in
    /// replication order.
    pub fn samples(&self, dataset: &str, ds: DsMethod, ps: PsMethod) -> Vec<f64> {
        self.records
            .range((dataset.to_string(), ds, ps, 0)..=(dataset.to_string(), ds, ps, u32::MAX))
            .map(|(_, &a)| a)
            .collect()
    }

    /// Mean accuracy over replications, `None` when the cell is absent.
    pub fn cell_mean(&self, dataset: &str, ds: DsMethod, ps: PsMethod) -> Option<f64> {
        let s = self.samples(dataset, ds, ps);
        (!s.is_empty()).then(|| mean(&s))
    }

    /// Per replication, the accuracy of `ps` on `dataset` averaged over the
    /// DS methods recorded for that replication.
    pub fn replication_means(&self, dataset: &str, ps: PsMethod) -> Vec<f64> {
        let mut by_rep: BTreeMap<u32, (f64, usize)> = BTreeMap::new();
        for ((d, _, p, r), &a) in &self.records {
            if d == dataset && *p == ps {
                let e = by_rep.entry(*r).or_insert((0.0, 0));
                e.0 += a;
                e.1 += 1;
            }
        }
        by_rep.values().map(|&(s, c)| s / c as f64).collect()
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation; 0 for fewer than two values.
pub(crate) fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}
