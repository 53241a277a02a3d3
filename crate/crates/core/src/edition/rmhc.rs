use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::search::{FitnessEvaluator, SearchOutcome};
use crate::seed::rng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmhcConfig {
    pub iterations: usize,
    /// Size of the random starting subset as a fraction of DSEL.
    pub init_frac: f64,
    pub seed: u64,
}

impl RmhcConfig {
    pub fn new(seed: u64) -> Self {
        RmhcConfig {
            iterations: 10_000,
            init_frac: 0.10,
            seed,
        }
    }
}

/// Random mutation hill climbing from a random subset of
/// `round(init_frac * N)` rows (at least one).
pub fn rmhc_edit(evaluator: &FitnessEvaluator, cfg: &RmhcConfig) -> Result<SearchOutcome> {
    if !(cfg.init_frac > 0.0 && cfg.init_frac <= 1.0) {
        return Err(Error::InvalidParameter(format!("init_frac = {}", cfg.init_frac)));
    }
    let n = evaluator.len();
    let size = ((cfg.init_frac * n as f64).round() as usize).clamp(1, n.max(1));
    let mut r = rng(cfg.seed);
    let start = SelectionMask::from_indices(n, &index::sample(&mut r, n, size).into_vec());
    climb(evaluator, start, cfg, r)
}

/// Random mutation hill climbing from a given subset.
pub fn rmhc_edit_from(evaluator: &FitnessEvaluator, start: SelectionMask, cfg: &RmhcConfig) -> Result<SearchOutcome> {
    if start.len() != evaluator.len() {
        return Err(Error::DimensionMismatch {
            expected: evaluator.len(),
            got: start.len(),
        });
    }
    climb(evaluator, start, cfg, rng(cfg.seed))
}

/// Flips one uniformly chosen bit per iteration and keeps the result only if
/// it is strictly fitter.
fn climb(
    evaluator: &FitnessEvaluator,
    start: SelectionMask,
    cfg: &RmhcConfig,
    mut r: crate::seed::Rng,
) -> Result<SearchOutcome> {
    if cfg.iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be positive".into()));
    }
    if evaluator.knn_k() != 1 {
        return Err(Error::InvalidParameter("RMHC scores subsets with 1-NN".into()));
    }
    if evaluator.is_empty() {
        return Err(Error::InvalidParameter("empty DSEL".into()));
    }
    let mut tracker = crate::search::Tracker::new(evaluator, cfg.iterations + 1);
    let mut current = start;
    let mut current_f = tracker.evaluate(&current);
    for _ in 0..cfg.iterations {
        let i = r.random_range(0..current.len());
        current.flip(i);
        let f = tracker.evaluate(&current);
        if f > current_f {
            current_f = f;
        } else {
            current.flip(i);
        }
    }
    Ok(tracker.finish())
}
