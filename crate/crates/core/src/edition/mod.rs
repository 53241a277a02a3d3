//! Edition-paradigm prototype selection: ENN, RNG editing and RMHC.

mod enn;
mod rmhc;
mod rng;

pub use enn::{enn_edit, ENN_DEFAULT_K};
pub use rmhc::{rmhc_edit, rmhc_edit_from, RmhcConfig};
pub use rng::{build_rng_graph, rng_edit, RngGraph};
