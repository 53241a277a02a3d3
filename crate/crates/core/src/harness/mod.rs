//! The replicated experiment protocol: split, scale, train the pool, edit
//! DSEL with every PS method, classify the test set with every DS method,
//! and summarise the resulting records.

mod config;
mod experiment;
mod records;
mod report;

pub use config::{DatasetEntry, ExperimentConfig, MethodOverrides, SearchOverrides};
pub use experiment::{measure_generalization_time, run_experiment, time_classification, CellStatus, RunRecord};
pub use records::{read_records, write_records, RECORDS_HEADER};
pub use report::{report, BestCount, DatasetRow, RankRow, ReductionRow, Report, WtlRow};
