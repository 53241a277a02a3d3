use rand::seq::{index, SliceRandom};

use super::{check_len, random_mask, reseed_if_empty, FitnessEvaluator, GaConfig, SearchOutcome, Tracker};
use crate::error::Result;
use crate::mask::SelectionMask;
use crate::seed::{rng, Rng};

/// Half-uniform crossover: swaps exactly `floor(D / 2)` of the `D` positions
/// where the parents differ, chosen at random. Identical parents produce no
/// offspring.
pub fn hux(a: &SelectionMask, b: &SelectionMask, rng: &mut Rng) -> Option<(SelectionMask, SelectionMask)> {
    let differing: Vec<usize> = (0..a.len()).filter(|&i| a.get(i) != b.get(i)).collect();
    if differing.is_empty() {
        return None;
    }
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    for k in index::sample(rng, differing.len(), differing.len() / 2) {
        let i = differing[k];
        c1.set(i, b.get(i));
        c2.set(i, a.get(i));
    }
    Some((c1, c2))
}

/// `count` copies of `model`, each with exactly `floor(change * L)` distinct
/// random bits flipped.
pub(crate) fn diverge(model: &SelectionMask, count: usize, change: f64, rng: &mut Rng) -> Vec<SelectionMask> {
    let len = model.len();
    let flips = (change * len as f64).floor() as usize;
    (0..count)
        .map(|_| {
            let mut m = model.clone();
            for i in index::sample(rng, len, flips.min(len)) {
                m.flip(i);
            }
            m
        })
        .collect()
}

/// CHC adaptive search.
///
/// Parents are paired at random and mate only if half their Hamming distance
/// exceeds the incest threshold (initially `L / 4`). HUX offspring compete
/// with their parents for the `N` places of the next generation. A
/// generation in which no offspring survives lowers the threshold by one;
/// once it reaches zero the population is rebuilt around the best mask found
/// so far and the threshold is reset. No mutation is applied.
pub fn chc_edit(evaluator: &FitnessEvaluator, cfg: &GaConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    check_len(evaluator)?;
    let len = evaluator.len();
    let size = cfg.population_size;
    let initial_threshold = (len / 4) as i64;
    let mut threshold = initial_threshold;
    let mut rng = rng(cfg.seed);
    let mut tracker = Tracker::new(evaluator, cfg.max_evaluations);

    let mut pop: Vec<(SelectionMask, f64)> = Vec::with_capacity(size);
    for _ in 0..size {
        if tracker.exhausted() {
            break;
        }
        let m = random_mask(len, 0.5, &mut rng);
        let f = tracker.evaluate(&m);
        pop.push((m, f));
    }

    while !tracker.exhausted() {
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.shuffle(&mut rng);
        let mut offspring: Vec<(SelectionMask, f64)> = Vec::new();
        'pairs: for pair in order.chunks_exact(2) {
            let (a, b) = (&pop[pair[0]].0, &pop[pair[1]].0);
            let distance = a.hamming(b) as f64;
            if distance / 2.0 <= threshold as f64 {
                continue;
            }
            if let Some((mut c1, mut c2)) = hux(a, b, &mut rng) {
                reseed_if_empty(&mut c1, &mut rng);
                reseed_if_empty(&mut c2, &mut rng);
                for c in [c1, c2] {
                    if tracker.exhausted() {
                        break 'pairs;
                    }
                    let f = tracker.evaluate(&c);
                    offspring.push((c, f));
                }
            }
        }

        // Elitist survival; parents precede offspring so they win ties.
        let parents = pop.len();
        let mut merged: Vec<(usize, (SelectionMask, f64))> =
            pop.drain(..).chain(offspring).enumerate().collect();
        merged.sort_by(|x, y| y.1 .1.total_cmp(&x.1 .1).then(x.0.cmp(&y.0)));
        merged.truncate(size);
        let survivors = merged.iter().filter(|(i, _)| *i >= parents).count();
        pop = merged.into_iter().map(|(_, p)| p).collect();

        if survivors == 0 {
            threshold -= 1;
        }
        if threshold <= 0 && !tracker.exhausted() {
            let best = tracker.best.clone().unwrap_or_else(|| pop[0].clone());
            let mut fresh = vec![best.clone()];
            for mut m in diverge(&best.0, size - 1, cfg.restart_change, &mut rng) {
                if tracker.exhausted() {
                    break;
                }
                reseed_if_empty(&mut m, &mut rng);
                let f = tracker.evaluate(&m);
                fresh.push((m, f));
            }
            pop = fresh;
            threshold = initial_threshold;
        }
    }
    Ok(tracker.finish())
}
