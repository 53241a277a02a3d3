use rand::seq::{index, SliceRandom};
use rand::Rng as _;

use super::{check_len, mutate, reseed_if_empty, FitnessEvaluator, GaConfig, SearchOutcome, Tracker};
use crate::error::Result;
use crate::mask::SelectionMask;
use crate::seed::{rng, Rng};

/// Binary tournament among population members other than `exclude`.
fn tournament(pop: &[(SelectionMask, f64)], exclude: Option<usize>, rng: &mut Rng) -> usize {
    let candidates: Vec<usize> = (0..pop.len()).filter(|&i| Some(i) != exclude).collect();
    if candidates.len() == 1 {
        return candidates[0];
    }
    let picks = index::sample(rng, candidates.len(), 2);
    let (a, b) = (candidates[picks.index(0)], candidates[picks.index(1)]);
    if pop[b].1 > pop[a].1 || (pop[b].1 == pop[a].1 && b < a) {
        b
    } else {
        a
    }
}

/// Each child takes a random half of its genes from one parent and the
/// rest from the other; the second child is the complement.
fn half_crossover(a: &SelectionMask, b: &SelectionMask, rng: &mut Rng) -> (SelectionMask, SelectionMask) {
    let mut c1 = b.clone();
    let mut c2 = a.clone();
    for i in index::sample(rng, a.len(), a.len() / 2) {
        c1.set(i, a.get(i));
        c2.set(i, b.get(i));
    }
    (c1, c2)
}

/// Greedy removal pass: tries dropping each retained row once, in random
/// order, keeping every drop that does not lower fitness.
fn meme(mask: &mut SelectionMask, fitness: &mut f64, tracker: &mut Tracker<'_>, rng: &mut Rng) {
    let mut order = mask.indices();
    order.shuffle(rng);
    for i in order {
        if tracker.exhausted() {
            break;
        }
        if mask.retained_count() <= 1 {
            break;
        }
        mask.set(i, false);
        let f = tracker.evaluate(mask);
        if f >= *fitness {
            *fitness = f;
        } else {
            mask.set(i, true);
        }
    }
}

/// Steady-state memetic algorithm.
///
/// Every step picks two parents by binary tournament, builds two children by
/// half-uniform gene inheritance and asymmetric mutation, refines children
/// that are at least as fit as the current worst member with a greedy
/// removal pass, and lets each child replace the worst member if it is
/// strictly fitter.
pub fn ssma_edit(evaluator: &FitnessEvaluator, cfg: &GaConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    check_len(evaluator)?;
    let len = evaluator.len();
    let mut rng = rng(cfg.seed);
    let mut tracker = Tracker::new(evaluator, cfg.max_evaluations);

    let mut pop: Vec<(SelectionMask, f64)> = Vec::with_capacity(cfg.population_size);
    for _ in 0..cfg.population_size {
        if tracker.exhausted() {
            break;
        }
        let count = rng.random_range(1..=len);
        let m = SelectionMask::from_indices(len, &index::sample(&mut rng, len, count).into_vec());
        let f = tracker.evaluate(&m);
        pop.push((m, f));
    }

    while !tracker.exhausted() && pop.len() >= 2 {
        let p1 = tournament(&pop, None, &mut rng);
        let p2 = tournament(&pop, Some(p1), &mut rng);
        let (c1, c2) = if rng.random_bool(cfg.crossover_rate) {
            half_crossover(&pop[p1].0, &pop[p2].0, &mut rng)
        } else {
            (pop[p1].0.clone(), pop[p2].0.clone())
        };
        let mut children = Vec::with_capacity(2);
        for mut c in [c1, c2] {
            mutate(&mut c, cfg.mutation_1to0, cfg.mutation_0to1, &mut rng);
            reseed_if_empty(&mut c, &mut rng);
            if tracker.exhausted() {
                break;
            }
            let f = tracker.evaluate(&c);
            children.push((c, f));
        }

        let worst = pop.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        for (c, f) in children.iter_mut() {
            if *f >= worst {
                meme(c, f, &mut tracker, &mut rng);
            }
        }

        children.sort_by(|a, b| b.1.total_cmp(&a.1));
        for child in children {
            let (wi, wf) = pop
                .iter()
                .enumerate()
                .map(|(i, p)| (i, p.1))
                .fold((0, f64::INFINITY), |acc, (i, f)| if f <= acc.1 { (i, f) } else { acc });
            if child.1 > wf {
                pop[wi] = child;
            }
        }
    }
    Ok(tracker.finish())
}
