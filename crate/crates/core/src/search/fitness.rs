use crate::data::knn::{distance, majority_label, neighbor_order};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::par;

/// Weight of accuracy against reduction.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// Neighbours precomputed per row for the 1-NN fast path.
const NEIGHBOR_LIST_LEN: usize = 64;

/// Scores a candidate DSEL' as `alpha * accuracy + (1 - alpha) * reduction`.
///
/// `accuracy` is the leave-one-out `k`-NN accuracy over every DSEL row,
/// using only retained rows as references (a retained row never votes for
/// itself); `reduction` is `1 - retained / N`. An empty mask scores
/// negative infinity.
#[derive(Clone, Debug)]
pub struct FitnessEvaluator {
    alpha: f64,
    knn_k: usize,
    data: Dataset,
    list_len: usize,
    /// `list_len` nearest other rows of each row, by (distance, index).
    neighbors: Vec<u32>,
}

impl FitnessEvaluator {
    /// 1-NN fitness with weight `alpha`.
    pub fn new(dsel: &Dataset, alpha: f64) -> Result<Self> {
        Self::with_k(dsel, alpha, 1)
    }

    pub fn with_k(dsel: &Dataset, alpha: f64, knn_k: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} not in [0, 1]")));
        }
        if knn_k == 0 {
            return Err(Error::InvalidParameter("knn_k must be positive".into()));
        }
        if dsel.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter("dataset too large".into()));
        }
        let n = dsel.len();
        let list_len = NEIGHBOR_LIST_LEN.min(n.saturating_sub(1));
        let lists = par::map_range(n, |i| {
            let xi = dsel.row(i);
            let mut c: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (distance(xi, dsel.row(j)), j))
                .collect();
            if list_len > 0 && list_len < c.len() {
                c.select_nth_unstable_by(list_len - 1, neighbor_order);
                c.truncate(list_len);
            }
            c.sort_unstable_by(neighbor_order);
            c.into_iter().map(|(_, j)| j as u32).collect::<Vec<u32>>()
        });
        Ok(FitnessEvaluator {
            alpha,
            knn_k,
            data: dsel.clone(),
            list_len,
            neighbors: lists.into_iter().flatten().collect(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn knn_k(&self) -> usize {
        self.knn_k
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn fitness(&self, mask: &SelectionMask) -> f64 {
        if mask.retained_count() == 0 {
            return f64::NEG_INFINITY;
        }
        self.alpha * self.accuracy(mask) + (1.0 - self.alpha) * mask.reduction_rate()
    }

    /// Leave-one-out accuracy of the retained rows as a reference set.
    pub fn accuracy(&self, mask: &SelectionMask) -> f64 {
        debug_assert_eq!(mask.len(), self.len());
        let retained = mask.indices();
        let n = self.len();
        let correct = if self.knn_k == 1 {
            (0..n).filter(|&i| self.nearest_agrees(i, mask, &retained)).count()
        } else {
            (0..n).filter(|&i| self.vote_agrees(i, &retained)).count()
        };
        correct as f64 / n as f64
    }

    fn nearest_agrees(&self, i: usize, mask: &SelectionMask, retained: &[usize]) -> bool {
        let others = retained.len() - usize::from(mask.get(i));
        if others == 0 {
            return false;
        }
        let nearest = if retained.len() > self.list_len {
            let list = &self.neighbors[i * self.list_len..(i + 1) * self.list_len];
            list.iter()
                .map(|&j| j as usize)
                .find(|&j| mask.get(j))
                .unwrap_or_else(|| self.scan_nearest(i, retained))
        } else {
            self.scan_nearest(i, retained)
        };
        self.data.label(nearest) == self.data.label(i)
    }

    /// Nearest retained row other than `i`; the lower index wins ties.
    fn scan_nearest(&self, i: usize, retained: &[usize]) -> usize {
        let xi = self.data.row(i);
        let mut best = (f64::INFINITY, usize::MAX);
        for &j in retained {
            if j == i {
                continue;
            }
            let cand = (distance(xi, self.data.row(j)), j);
            if neighbor_order(&cand, &best).is_lt() {
                best = cand;
            }
        }
        best.1
    }

    fn vote_agrees(&self, i: usize, retained: &[usize]) -> bool {
        let xi = self.data.row(i);
        let mut cands: Vec<(f64, usize)> = retained
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| (distance(xi, self.data.row(j)), j))
            .collect();
        if cands.is_empty() {
            return false;
        }
        cands.sort_unstable_by(neighbor_order);
        cands.truncate(self.knn_k);
        let vote = majority_label(cands.iter().map(|c| self.data.label(c.1)), self.data.num_classes());
        vote == self.data.label(i)
    }
}
