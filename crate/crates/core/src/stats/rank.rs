use std::collections::BTreeMap;

use super::{ComparisonTable, Error, PsMethod, Result};

// Two-tailed Bonferroni-Dunn critical values for k = 2..=10 compared methods.
const Q_005: [f64; 9] = [1.960, 2.241, 2.394, 2.498, 2.576, 2.638, 2.690, 2.734, 2.773];
const Q_010: [f64; 9] = [1.645, 1.960, 2.128, 2.241, 2.326, 2.394, 2.450, 2.498, 2.539];

/// Tabulated q_α for `k` methods; α must be 0.05 or 0.10 and 2 ≤ k ≤ 10.
pub fn q_alpha(alpha: f64, k: usize) -> Result<f64> {
    let table = if (alpha - 0.05).abs() < 1e-12 {
        &Q_005
    } else if (alpha - 0.10).abs() < 1e-12 {
        &Q_010
    } else {
        return Err(Error::InvalidParameter(format!("no q_alpha table for alpha = {alpha}")));
    };
    if !(2..=10).contains(&k) {
        return Err(Error::InvalidParameter(format!("no q_alpha entry for k = {k}")));
    }
    Ok(table[k - 2])
}

/// `q·sqrt(k(k+1) / (6n))`.
pub fn bonferroni_dunn_cd(k: usize, n_blocks: usize, q_alpha: f64) -> f64 {
    let k = k as f64;
    q_alpha * (k * (k + 1.0) / (6.0 * n_blocks as f64)).sqrt()
}

/// Mid-ranks of `values` with the largest value ranked 1.
pub(crate) fn descending_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share their mean.
        let r = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = r;
        }
        start = end;
    }
    ranks
}

/// Average Friedman rank of each PS method over all (dataset, DS method)
/// blocks, ranking cell means within a block (best = 1).
pub fn friedman_ranks(table: &ComparisonTable) -> Result<BTreeMap<PsMethod, f64>> {
    let methods: Vec<PsMethod> = table.ps_methods().into_iter().collect();
    let cells = table.cells();
    if cells.is_empty() {
        return Err(Error::IncompleteBlocks("no blocks".into()));
    }
    let mut sums = vec![0.0; methods.len()];
    for (dataset, ds) in &cells {
        let means = methods
            .iter()
            .map(|&ps| {
                table
                    .cell_mean(dataset, *ds, ps)
                    .ok_or_else(|| Error::IncompleteBlocks(format!("{dataset}/{ds} lacks {ps}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        for (s, r) in sums.iter_mut().zip(descending_ranks(&means)) {
            *s += r;
        }
    }
    let n = cells.len() as f64;
    Ok(methods.into_iter().zip(sums).map(|(m, s)| (m, s / n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynselect::DsMethod;
    use proptest::prelude::*;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn mid_ranks() {
        assert_eq!(descending_ranks(&[0.9, 0.8, 0.8]), vec![1.0, 2.5, 2.5]);
        assert_eq!(descending_ranks(&[0.5, 0.5, 0.5, 0.5]), vec![2.5; 4]);
        assert_eq!(descending_ranks(&[0.1, 0.3, 0.2]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn two_methods_two_blocks() {
        let mut t = ComparisonTable::new();
        for d in ["x", "y"] {
            t.insert(d, DsMethod::Ola, PsMethod::Enn, 0, 0.9).unwrap();
            t.insert(d, DsMethod::Ola, PsMethod::Rng, 0, 0.8).unwrap();
        }
        let r = friedman_ranks(&t).unwrap();
        assert_eq!(r[&PsMethod::Enn], 1.0);
        assert_eq!(r[&PsMethod::Rng], 2.0);
    }

    #[test]
    fn incomplete_blocks_rejected() {
        let mut t = ComparisonTable::new();
        t.insert("x", DsMethod::Ola, PsMethod::Enn, 0, 0.9).unwrap();
        t.insert("y", DsMethod::Ola, PsMethod::Rng, 0, 0.8).unwrap();
        assert!(matches!(friedman_ranks(&t), Err(Error::IncompleteBlocks(_))));
    }

    #[test]
    fn cd_values() {
        assert!((bonferroni_dunn_cd(2, 6, 1.0) - (6.0f64 / 36.0).sqrt()).abs() < 1e-12);
        let cd = bonferroni_dunn_cd(7, 180, q_alpha(0.05, 7).unwrap());
        assert!((cd - 0.601).abs() < 5e-4, "{cd}");
        assert!(q_alpha(0.01, 3).is_err());
        assert!(q_alpha(0.05, 11).is_err());
    }

    #[test]
    fn table_matches_bonferroni_normal_quantiles() {
        let n = Normal::standard();
        for alpha in [0.05, 0.10] {
            for k in 2..=10 {
                let z = n.inverse_cdf(1.0 - alpha / (2.0 * (k as f64 - 1.0)));
                assert!((q_alpha(alpha, k).unwrap() - z).abs() < 2e-3, "alpha {alpha} k {k}: {z}");
            }
        }
    }

    proptest! {
        #[test]
        fn cd_decreases_with_blocks(k in 2usize..11, n in 1usize..1000) {
            prop_assert!(bonferroni_dunn_cd(k, n + 1, 2.0) < bonferroni_dunn_cd(k, n, 2.0));
        }

        #[test]
        fn ranks_are_order_only(block in proptest::collection::vec(0u8..6, 2..8)) {
            let v: Vec<f64> = block.iter().map(|&b| b as f64 / 10.0).collect();
            let w: Vec<f64> = v.iter().map(|x| (3.0 * x).exp() - 7.0).collect();
            let r = descending_ranks(&v);
            prop_assert_eq!(&r, &descending_ranks(&w));
            let k = v.len() as f64;
            prop_assert!((r.iter().sum::<f64>() - k * (k + 1.0) / 2.0).abs() < 1e-9);
        }
    }
}
