use serde::Serialize;

use super::{ComparisonTable, Error, PsMethod, Result};

/// One-sided normal quantile at the 0.05 level.
pub const DEFAULT_Z_ALPHA: f64 = 1.645;
/// Cell means closer than this count as a tie.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl WinTieLoss {
    pub fn n_exp(&self) -> usize {
        self.wins + self.ties + self.losses
    }

    /// Wins and losses swapped.
    pub fn mirrored(&self) -> Self {
        WinTieLoss {
            wins: self.losses,
            ties: self.ties,
            losses: self.wins,
        }
    }
}

/// Critical number of wins `n/2 + z·sqrt(n)/2`.
pub fn sign_test_critical(n_exp: usize, z_alpha: f64) -> f64 {
    let n = n_exp as f64;
    n / 2.0 + z_alpha * n.sqrt() / 2.0
}

/// The critical value as usually printed: one decimal, with a trailing `.0`
/// dropped (101.03 becomes 101, 19.51 becomes 19.5).
pub fn reported_critical(n_c: f64) -> f64 {
    (n_c * 10.0).round() / 10.0
}

/// `wins ≥ n_c`; for integral wins this is `wins ≥ ⌈n_c⌉`.
pub fn sign_test_significant(wins: usize, n_c: f64) -> bool {
    wins as f64 >= n_c
}

/// Compares the per-cell mean accuracy of `challenger` against `baseline`
/// over every (dataset, DS method) cell of the table.
pub fn win_tie_loss(
    table: &ComparisonTable,
    challenger: PsMethod,
    baseline: PsMethod,
    tolerance: f64,
) -> Result<WinTieLoss> {
    let mut out = WinTieLoss::default();
    for (dataset, ds) in table.cells() {
        let get = |ps: PsMethod| {
            table
                .cell_mean(&dataset, ds, ps)
                .ok_or_else(|| Error::MissingCell(format!("{dataset}/{ds}/{ps}")))
        };
        let c = get(challenger)?;
        let b = get(baseline)?;
        if c > b + tolerance {
            out.wins += 1;
        } else if c < b - tolerance {
            out.losses += 1;
        } else {
            out.ties += 1;
        }
    }
    Ok(out)
}
