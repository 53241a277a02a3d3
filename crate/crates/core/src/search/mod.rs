//! Subset fitness and the evolutionary hybrid prototype-selection searchers.

mod chc;
mod fitness;
mod gga;
mod ssma;

pub use chc::{chc_edit, hux};
pub use fitness::{FitnessEvaluator, DEFAULT_ALPHA};
pub use gga::gga_edit;
pub use ssma::ssma_edit;

use std::io::Write;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::seed::Rng;

/// Parameters shared by the evolutionary searchers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_evaluations: usize,
    pub crossover_rate: f64,
    /// Per-bit probability that a retained row is dropped by mutation.
    pub mutation_1to0: f64,
    /// Per-bit probability that a dropped row is re-added by mutation.
    pub mutation_0to1: f64,
    /// Fraction of bits flipped when CHC restarts from its best chromosome.
    pub restart_change: f64,
    pub seed: u64,
}

impl GaConfig {
    pub fn ssma(seed: u64) -> Self {
        GaConfig {
            population_size: 50,
            max_evaluations: 10_000,
            crossover_rate: 1.0,
            mutation_1to0: 0.01,
            mutation_0to1: 0.001,
            restart_change: 0.35,
            seed,
        }
    }

    pub fn gga(seed: u64) -> Self {
        GaConfig {
            population_size: 51,
            crossover_rate: 0.6,
            ..Self::ssma(seed)
        }
    }

    /// CHC applies no mutation.
    pub fn chc(seed: u64) -> Self {
        GaConfig {
            population_size: 50,
            crossover_rate: 1.0,
            mutation_1to0: 0.0,
            mutation_0to1: 0.0,
            ..Self::ssma(seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [
            self.crossover_rate,
            self.mutation_1to0,
            self.mutation_0to1,
            self.restart_change,
        ];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidParameter(format!(
                "probabilities must lie in [0, 1]: {probs:?}"
            )));
        }
        if self.population_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "population size {} < 2",
                self.population_size
            )));
        }
        if self.max_evaluations == 0 {
            return Err(Error::InvalidParameter("max_evaluations must be positive".into()));
        }
        Ok(())
    }
}

/// One fitness evaluation as seen by a searcher.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluation: usize,
    pub fitness: f64,
    pub best_fitness: f64,
    pub retained: usize,
}

/// Result of a subset search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub mask: SelectionMask,
    pub fitness: f64,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
}

impl SearchOutcome {
    /// Writes the trace as `evaluation fitness best_fitness retained` lines.
    pub fn write_trace(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "# evaluation fitness best_fitness retained")?;
        for t in &self.trace {
            writeln!(out, "{} {} {} {}", t.evaluation, t.fitness, t.best_fitness, t.retained)?;
        }
        Ok(())
    }
}

/// Counts evaluations against a budget and remembers the best mask seen.
pub(crate) struct Tracker<'a> {
    evaluator: &'a FitnessEvaluator,
    max: usize,
    used: usize,
    pub(crate) best: Option<(SelectionMask, f64)>,
    trace: Vec<TracePoint>,
}

impl<'a> Tracker<'a> {
    pub(crate) fn new(evaluator: &'a FitnessEvaluator, max: usize) -> Self {
        Tracker {
            evaluator,
            max,
            used: 0,
            best: None,
            trace: Vec::new(),
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.used >= self.max
    }

    pub(crate) fn evaluate(&mut self, mask: &SelectionMask) -> f64 {
        let f = self.evaluator.fitness(mask);
        self.used += 1;
        let improved = match &self.best {
            None => true,
            Some((_, b)) => f > *b,
        };
        if improved {
            self.best = Some((mask.clone(), f));
        }
        let best_fitness = self.best.as_ref().map_or(f, |b| b.1);
        self.trace.push(TracePoint {
            evaluation: self.used,
            fitness: f,
            best_fitness,
            retained: mask.retained_count(),
        });
        f
    }

    pub(crate) fn finish(self) -> SearchOutcome {
        let n = self.evaluator.len();
        let (mask, fitness) = self
            .best
            .unwrap_or_else(|| (SelectionMask::full(n), f64::NEG_INFINITY));
        SearchOutcome {
            mask,
            fitness,
            evaluations: self.used,
            trace: self.trace,
        }
    }
}

/// Each bit set independently with probability `p`; never empty.
pub(crate) fn random_mask(n: usize, p: f64, rng: &mut Rng) -> SelectionMask {
    let mut m = SelectionMask::from_bits((0..n).map(|_| rng.random_bool(p)).collect());
    if m.retained_count() == 0 {
        m.set(rng.random_range(0..n), true);
    }
    m
}

/// Asymmetric per-bit mutation.
pub(crate) fn mutate(mask: &mut SelectionMask, one_to_zero: f64, zero_to_one: f64, rng: &mut Rng) {
    for i in 0..mask.len() {
        let p = if mask.get(i) { one_to_zero } else { zero_to_one };
        if p > 0.0 && rng.random_bool(p) {
            mask.flip(i);
        }
    }
}

/// Replaces an empty chromosome with a uniformly random non-empty one.
pub(crate) fn reseed_if_empty(mask: &mut SelectionMask, rng: &mut Rng) {
    if mask.retained_count() == 0 {
        *mask = random_mask(mask.len(), 0.5, rng);
    }
}

pub(crate) fn check_len(evaluator: &FitnessEvaluator) -> Result<()> {
    if evaluator.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "subset search needs at least 2 rows, got {}",
            evaluator.len()
        )));
    }
    Ok(())
}
