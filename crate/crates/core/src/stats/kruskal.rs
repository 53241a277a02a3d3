use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{Error, Result};

/// Significance level of the Kruskal-Wallis decision.
pub const KW_ALPHA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KruskalWallis {
    pub h: f64,
    /// Chi-square critical value with `groups - 1` degrees of freedom.
    pub critical: f64,
    pub significant: bool,
}

/// Tie-corrected Kruskal-Wallis H across `groups`. When every observation
/// is tied, H is 0.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::InvalidParameter("Kruskal-Wallis needs at least 2 groups".into()));
    }
    if let Some(i) = groups.iter().position(|g| g.is_empty()) {
        return Err(Error::InvalidParameter(format!("group {i} is empty")));
    }
    let mut all: Vec<(f64, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, xs)| xs.iter().map(move |&x| (x, g)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = all.len() as f64;

    let mut rank_sums = vec![0.0; groups.len()];
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < all.len() {
        let mut end = start + 1;
        while end < all.len() && all[end].0 == all[start].0 {
            end += 1;
        }
        let r = (start + 1 + end) as f64 / 2.0;
        for &(_, g) in &all[start..end] {
            rank_sums[g] += r;
        }
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        start = end;
    }

    let df = (groups.len() - 1) as f64;
    let critical = ChiSquared::new(df)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?
        .inverse_cdf(1.0 - KW_ALPHA);
    let correction = 1.0 - tie_term / (n * n * n - n);
    if correction <= 0.0 {
        return Ok(KruskalWallis {
            h: 0.0,
            critical,
            significant: false,
        });
    }
    let sum: f64 = rank_sums
        .iter()
        .zip(groups)
        .map(|(r, g)| r * r / g.len() as f64)
        .sum();
    let h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
    // Rounding can leave a tiny negative value for identical groups.
    let h = h.max(0.0);
    Ok(KruskalWallis {
        h,
        critical,
        significant: h > critical,
    })
}
