use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::seed::rng;

/// Proportions of the train / DSEL / test holdout.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_frac: f64,
    pub dsel_frac: f64,
    pub test_frac: f64,
    pub seed: u64,
}

impl SplitSpec {
    /// The 50 / 25 / 25 protocol split.
    pub fn standard(seed: u64) -> Self {
        SplitSpec {
            train_frac: 0.5,
            dsel_frac: 0.25,
            test_frac: 0.25,
            seed,
        }
    }

    fn fractions(&self) -> Result<[f64; 3]> {
        let f = [self.train_frac, self.dsel_frac, self.test_frac];
        if f.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidSplit(format!("{f:?} must all be positive")));
        }
        if (f.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSplit(format!("{f:?} must sum to 1")));
        }
        Ok(f)
    }
}

/// Largest-remainder apportionment of `total` by `fractions`.
fn apportion(total: usize, fractions: &[f64; 3]) -> [usize; 3] {
    let exact = fractions.map(|f| total as f64 * f);
    let mut out = exact.map(|e| e.floor() as usize);
    let mut left = total - out.iter().sum::<usize>();
    let mut order = [0, 1, 2];
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &p in order.iter().cycle() {
        if left == 0 {
            break;
        }
        out[p] += 1;
        left -= 1;
    }
    out
}

/// Per-class partition sizes. Every cell is the floor or ceiling of its
/// exact share, each class gets at least one row per partition, and the
/// column totals follow the global largest-remainder apportionment whenever
/// those constraints allow it.
fn class_allocation(counts: &[usize], fractions: &[f64; 3]) -> Vec<[usize; 3]> {
    let total: usize = counts.iter().sum();
    let targets = apportion(total, fractions);
    let mut alloc: Vec<[usize; 3]> = Vec::with_capacity(counts.len());
    let mut extras = Vec::with_capacity(counts.len());
    let mut remainders = Vec::with_capacity(counts.len());
    for &n in counts {
        let exact = fractions.map(|f| n as f64 * f);
        let mut cell = exact.map(|e| e.floor() as usize);
        if n >= 3 {
            for c in cell.iter_mut() {
                if *c == 0 {
                    *c = 1;
                }
            }
        }
        let placed: usize = cell.iter().sum();
        extras.push(n.saturating_sub(placed));
        remainders.push(exact.map(|e| e - e.floor()));
        alloc.push(cell);
    }
    let mut need: [i64; 3] = [0, 1, 2].map(|p| {
        targets[p] as i64 - alloc.iter().map(|a| a[p] as i64).sum::<i64>()
    });
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| extras[b].cmp(&extras[a]).then(a.cmp(&b)));
    for c in order {
        let exact = fractions.map(|f| counts[c] as f64 * f);
        for _ in 0..extras[c] {
            // Only cells still at their floor may take one more row.
            let pick = (0..3)
                .filter(|&p| alloc[c][p] as f64 <= exact[p].floor())
                .max_by(|&a, &b| {
                    need[a]
                        .cmp(&need[b])
                        .then(remainders[c][a].total_cmp(&remainders[c][b]))
                        .then(b.cmp(&a))
                })
                .unwrap_or(0);
            alloc[c][pick] += 1;
            need[pick] -= 1;
        }
    }
    alloc
}

/// Splits `data` into train / DSEL / test while preserving class priors.
pub fn stratified_holdout(data: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset, Dataset)> {
    let fractions = spec.fractions()?;
    let counts = data.class_counts();
    for (c, &n) in counts.iter().enumerate() {
        if n > 0 && n < 3 {
            return Err(Error::ClassTooSmall {
                class: data.class_names()[c].clone(),
                count: n,
            });
        }
    }
    let alloc = class_allocation(&counts, &fractions);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); data.num_classes()];
    for (i, &l) in data.labels().iter().enumerate() {
        by_class[l].push(i);
    }
    let mut rng = rng(spec.seed);
    let mut parts: [Vec<usize>; 3] = Default::default();
    for (members, cell) in by_class.iter_mut().zip(&alloc) {
        members.shuffle(&mut rng);
        let mut start = 0;
        for (part, &size) in parts.iter_mut().zip(cell) {
            part.extend_from_slice(&members[start..start + size]);
            start += size;
        }
    }
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    Ok((
        data.subset(&parts[0]),
        data.subset(&parts[1]),
        data.subset(&parts[2]),
    ))
}
