use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng as _;

use super::{check_len, mutate, random_mask, reseed_if_empty, FitnessEvaluator, GaConfig, SearchOutcome, Tracker};
use crate::error::Result;
use crate::mask::SelectionMask;
use crate::seed::{rng, Rng};

/// Fitness-proportional draw of `count` indices (uniform if no member has
/// positive fitness).
fn roulette(fitness: &[f64], count: usize, rng: &mut Rng) -> Vec<usize> {
    let weights: Vec<f64> = fitness.iter().map(|f| f.max(0.0)).collect();
    match WeightedIndex::new(&weights) {
        Ok(dist) => (0..count).map(|_| dist.sample(rng)).collect(),
        Err(_) => (0..count).map(|_| rng.random_range(0..fitness.len())).collect(),
    }
}

/// Each bit from a random parent; the second child takes the other one.
fn uniform_crossover(a: &SelectionMask, b: &SelectionMask, rng: &mut Rng) -> (SelectionMask, SelectionMask) {
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    for i in 0..a.len() {
        if a.get(i) != b.get(i) && rng.random_bool(0.5) {
            c1.set(i, b.get(i));
            c2.set(i, a.get(i));
        }
    }
    (c1, c2)
}

/// Generational genetic algorithm.
///
/// Each generation draws a full population by fitness-proportional
/// selection, pairs it up, recombines each pair by uniform crossover with
/// probability `crossover_rate` and applies asymmetric per-bit mutation.
/// With an odd population the last selected chromosome passes through
/// unchanged. The best mask ever evaluated is returned.
pub fn gga_edit(evaluator: &FitnessEvaluator, cfg: &GaConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    check_len(evaluator)?;
    let n = evaluator.len();
    let mut rng = rng(cfg.seed);
    let mut tracker = Tracker::new(evaluator, cfg.max_evaluations);

    let mut pop: Vec<(SelectionMask, f64)> = Vec::with_capacity(cfg.population_size);
    for _ in 0..cfg.population_size {
        if tracker.exhausted() {
            break;
        }
        let m = random_mask(n, 0.5, &mut rng);
        let f = tracker.evaluate(&m);
        pop.push((m, f));
    }

    while !tracker.exhausted() && pop.len() >= 2 {
        let fitness: Vec<f64> = pop.iter().map(|p| p.1).collect();
        let picks = roulette(&fitness, pop.len(), &mut rng);
        let mut next: Vec<(SelectionMask, f64)> = Vec::with_capacity(pop.len());
        for pair in picks.chunks(2) {
            if let [a, b] = *pair {
                let (mut c1, mut c2) = if rng.random_bool(cfg.crossover_rate) {
                    uniform_crossover(&pop[a].0, &pop[b].0, &mut rng)
                } else {
                    (pop[a].0.clone(), pop[b].0.clone())
                };
                for c in [&mut c1, &mut c2] {
                    mutate(c, cfg.mutation_1to0, cfg.mutation_0to1, &mut rng);
                    reseed_if_empty(c, &mut rng);
                }
                for c in [c1, c2] {
                    if tracker.exhausted() {
                        break;
                    }
                    let f = tracker.evaluate(&c);
                    next.push((c, f));
                }
            } else {
                next.push(pop[pair[0]].clone());
            }
        }
        if next.len() < 2 {
            break;
        }
        pop = next;
    }
    Ok(tracker.finish())
}
