//! Prototype selection for the dynamic-selection dataset (DSEL) of dynamic
//! classifier and ensemble selection systems.
//!
//! The crate covers the full pipeline:
//!
//! * [`data`]: datasets, stratified holdout, z-score scaling, Euclidean KNN.
//! * [`pool`]: bagged Perceptron pools and the DSEL prediction cache.
//! * [`dynselect`]: region of competence, six dynamic selection rules.
//! * [`mask`], [`edition`], [`search`]: the six prototype-selection
//!   techniques (ENN, RNG, RMHC, GGA, CHC, SSMA) and the subset fitness.
//! * [`stats`]: sign test, Friedman ranks, Bonferroni-Dunn CD, Kruskal-Wallis.
//! * [`synth`]: seeded two-dimensional benchmark generators.
//! * [`harness`]: replicated experiments, CSV records and reports.

pub mod data;
pub mod dynselect;
pub mod edition;
pub mod error;
pub mod harness;
pub mod mask;
pub mod pool;
pub mod ps;
pub mod search;
pub mod stats;
pub mod synth;

mod par;
mod seed;

pub use data::{Dataset, RegionOfCompetence, Scaler, SplitSpec};
pub use error::{Error, Result};
pub use mask::SelectionMask;
pub use pool::{ClassifierPool, LinearClassifier};
pub use ps::PsMethod;
pub use seed::derive_seed;
