//! Seeded two-class, two-dimensional benchmark problems.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::seed::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthKind {
    /// Two interleaved arcs; `noise` is the radial standard deviation.
    Banana,
    /// Unit-spread Gaussians one unit apart; `noise` inflates the spread.
    GaussianOverlap,
    /// Gaussians ten units apart; `noise` is their standard deviation.
    SeparableGaussians,
    /// A disc inside a ring; `noise` is the radial standard deviation.
    NoisyRing,
}

impl SynthKind {
    pub const ALL: [SynthKind; 4] = [
        SynthKind::Banana,
        SynthKind::GaussianOverlap,
        SynthKind::SeparableGaussians,
        SynthKind::NoisyRing,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SynthKind::Banana => "banana",
            SynthKind::GaussianOverlap => "gaussian_overlap",
            SynthKind::SeparableGaussians => "separable_gaussians",
            SynthKind::NoisyRing => "noisy_ring",
        }
    }

    /// A reasonable `noise` when none is given.
    pub fn default_noise(&self) -> f64 {
        match self {
            SynthKind::Banana => 0.35,
            SynthKind::GaussianOverlap => 0.0,
            SynthKind::SeparableGaussians => 1.0,
            SynthKind::NoisyRing => 0.3,
        }
    }
}

impl fmt::Display for SynthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SynthKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown synthetic kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub n: usize,
    pub noise: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, n: usize, noise: f64, seed: u64) -> Self {
        SynthSpec { kind, n, noise, seed }
    }

    /// The kind's default noise level.
    pub fn with_default_noise(kind: SynthKind, n: usize, seed: u64) -> Self {
        Self::new(kind, n, kind.default_noise(), seed)
    }

    pub fn name(&self) -> String {
        format!("{}-n{}-s{}", self.kind, self.n, self.seed)
    }
}

fn gaussian(sd: f64) -> Normal<f64> {
    Normal::new(0.0, sd).expect("finite non-negative standard deviation")
}

/// Generates the dataset described by `spec`. Classes are balanced (the
/// first class takes the odd row) and rows are shuffled.
pub fn generate(spec: &SynthSpec) -> Result<Dataset> {
    if spec.n < 10 {
        return Err(Error::InvalidParameter(format!("n = {} < 10", spec.n)));
    }
    if !(spec.noise >= 0.0 && spec.noise.is_finite()) {
        return Err(Error::InvalidParameter(format!("noise = {}", spec.noise)));
    }
    let mut rng = rng(spec.seed);
    let n0 = spec.n.div_ceil(2);
    let mut rows: Vec<([f64; 2], usize)> = Vec::with_capacity(spec.n);
    let noise = gaussian(spec.noise);
    for i in 0..spec.n {
        let class = usize::from(i >= n0);
        let p = match spec.kind {
            SynthKind::Banana => {
                let t = rng.random_range(0.0..PI);
                let r = 1.0 + noise.sample(&mut rng);
                if class == 0 {
                    [r * t.cos(), r * t.sin()]
                } else {
                    [1.0 - r * t.cos(), 0.5 - r * t.sin()]
                }
            }
            SynthKind::GaussianOverlap => {
                let sd = gaussian(1.0 + spec.noise);
                let cx = if class == 0 { -0.5 } else { 0.5 };
                [cx + sd.sample(&mut rng), sd.sample(&mut rng)]
            }
            SynthKind::SeparableGaussians => {
                let cx = if class == 0 { -5.0 } else { 5.0 };
                [cx + noise.sample(&mut rng), noise.sample(&mut rng)]
            }
            SynthKind::NoisyRing => {
                let t = rng.random_range(0.0..2.0 * PI);
                let r = if class == 0 {
                    rng.random_range(0.0f64..1.0).sqrt()
                } else {
                    2.0
                } + noise.sample(&mut rng);
                [r * t.cos(), r * t.sin()]
            }
        };
        rows.push((p, class));
    }
    rows.shuffle(&mut rng);
    let features = rows.iter().flat_map(|(p, _)| *p).collect();
    let labels = rows.iter().map(|(_, c)| *c).collect();
    Dataset::from_flat(spec.name(), features, 2, labels, Some(2))
}
