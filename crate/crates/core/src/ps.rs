//! One entry point over the six prototype-selection techniques plus the
//! unedited baseline, with the minimum-size guard applied to every result.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::edition::{enn_edit, rmhc_edit, rng_edit, RmhcConfig, ENN_DEFAULT_K};
use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::search::{chc_edit, gga_edit, ssma_edit, FitnessEvaluator, GaConfig, SearchOutcome, DEFAULT_ALPHA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PsMethod {
    Baseline,
    #[serde(rename = "ENN")]
    Enn,
    #[serde(rename = "RNG")]
    Rng,
    #[serde(rename = "RMHC")]
    Rmhc,
    #[serde(rename = "SSMA")]
    Ssma,
    #[serde(rename = "GGA")]
    Gga,
    #[serde(rename = "CHC")]
    Chc,
}

impl PsMethod {
    pub const ALL: [PsMethod; 7] = [
        PsMethod::Baseline,
        PsMethod::Enn,
        PsMethod::Rng,
        PsMethod::Rmhc,
        PsMethod::Ssma,
        PsMethod::Gga,
        PsMethod::Chc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PsMethod::Baseline => "Baseline",
            PsMethod::Enn => "ENN",
            PsMethod::Rng => "RNG",
            PsMethod::Rmhc => "RMHC",
            PsMethod::Ssma => "SSMA",
            PsMethod::Gga => "GGA",
            PsMethod::Chc => "CHC",
        }
    }

    /// ENN, RNG and RMHC.
    pub fn is_edition(&self) -> bool {
        matches!(self, PsMethod::Enn | PsMethod::Rng | PsMethod::Rmhc)
    }

    /// SSMA, GGA and CHC.
    pub fn is_hybrid(&self) -> bool {
        matches!(self, PsMethod::Ssma | PsMethod::Gga | PsMethod::Chc)
    }
}

impl fmt::Display for PsMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PsMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PsMethod::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown PS method {s:?}")))
    }
}

/// Hyper-parameters of every technique. Seeds inside the nested configs are
/// overridden per run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PsParams {
    pub alpha: f64,
    pub enn_k: usize,
    pub rmhc: RmhcConfig,
    pub ssma: GaConfig,
    pub gga: GaConfig,
    pub chc: GaConfig,
    /// Results keeping fewer rows than this fall back to the full DSEL.
    pub min_retained: usize,
}

impl Default for PsParams {
    fn default() -> Self {
        PsParams {
            alpha: DEFAULT_ALPHA,
            enn_k: ENN_DEFAULT_K,
            rmhc: RmhcConfig::new(0),
            ssma: GaConfig::ssma(0),
            gga: GaConfig::gga(0),
            chc: GaConfig::chc(0),
            min_retained: 7,
        }
    }
}

/// The mask chosen for DSEL and what happened on the way.
#[derive(Clone, Debug, PartialEq)]
pub struct PsOutcome {
    pub method: PsMethod,
    pub mask: SelectionMask,
    /// Rows the technique itself kept, before the guard.
    pub raw_retained: usize,
    /// Set when the technique's result was rejected and the full DSEL kept.
    pub guarded: bool,
    /// Search details for the fitness-driven techniques.
    pub search: Option<SearchOutcome>,
}

/// Runs `method` on `dsel` with run seed `seed`.
pub fn select_prototypes(method: PsMethod, dsel: &Dataset, params: &PsParams, seed: u64) -> Result<PsOutcome> {
    let n = dsel.len();
    let evaluator = || FitnessEvaluator::new(dsel, params.alpha);
    let raw: Result<(SelectionMask, Option<SearchOutcome>)> = match method {
        PsMethod::Baseline => Ok((SelectionMask::full(n), None)),
        PsMethod::Enn => enn_edit(dsel, params.enn_k).map(|m| (m, None)),
        PsMethod::Rng => rng_edit(dsel).map(|m| (m, None)),
        PsMethod::Rmhc => {
            let cfg = RmhcConfig { seed, ..params.rmhc };
            rmhc_edit(&evaluator()?, &cfg).map(|o| (o.mask.clone(), Some(o)))
        }
        PsMethod::Ssma => {
            let cfg = GaConfig { seed, ..params.ssma };
            ssma_edit(&evaluator()?, &cfg).map(|o| (o.mask.clone(), Some(o)))
        }
        PsMethod::Gga => {
            let cfg = GaConfig { seed, ..params.gga };
            gga_edit(&evaluator()?, &cfg).map(|o| (o.mask.clone(), Some(o)))
        }
        PsMethod::Chc => {
            let cfg = GaConfig { seed, ..params.chc };
            chc_edit(&evaluator()?, &cfg).map(|o| (o.mask.clone(), Some(o)))
        }
    };
    let (mask, search) = match raw {
        Ok(r) => r,
        Err(Error::EmptySelection { .. }) => (SelectionMask::empty(n), None),
        Err(e) => return Err(e),
    };
    let raw_retained = mask.retained_count();
    let required = params.min_retained.min(n);
    if raw_retained < required {
        log::warn!(
            "{method} kept {raw_retained} of {n} rows in {}; keeping the full DSEL",
            dsel.name()
        );
        return Ok(PsOutcome {
            method,
            mask: SelectionMask::full(n),
            raw_retained,
            guarded: true,
            search,
        });
    }
    Ok(PsOutcome {
        method,
        mask,
        raw_retained,
        guarded: false,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in PsMethod::ALL {
            assert_eq!(m.as_str().parse::<PsMethod>().unwrap(), m);
        }
        assert_eq!(PsMethod::ALL.iter().filter(|m| m.is_edition()).count(), 3);
        assert_eq!(PsMethod::ALL.iter().filter(|m| m.is_hybrid()).count(), 3);
    }

    #[test]
    fn guard_restores_the_full_set() {
        // Alternating labels: ENN with k = 2 removes everything.
        let rows: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64]).collect();
        let labels = (0..12).map(|i| i % 2).collect();
        let d = Dataset::from_rows("alt", &rows, labels, None).unwrap();
        let params = PsParams {
            enn_k: 2,
            ..PsParams::default()
        };
        let out = select_prototypes(PsMethod::Enn, &d, &params, 0).unwrap();
        assert!(out.guarded);
        assert_eq!(out.raw_retained, 0);
        assert_eq!(out.mask, SelectionMask::full(12));

        let base = select_prototypes(PsMethod::Baseline, &d, &params, 0).unwrap();
        assert!(!base.guarded);
        assert_eq!(base.mask.reduction_rate(), 0.0);
    }
}
