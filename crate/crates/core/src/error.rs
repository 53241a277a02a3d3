use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("k = {k} exceeds the {available} usable reference rows")]
    NotEnoughNeighbors { k: usize, available: usize },

    #[error("region size K = {k} exceeds DSEL' size {dsel_size}")]
    RegionTooLarge { k: usize, dsel_size: usize },

    #[error("class {class} has {count} instance(s); stratified holdout needs at least 3")]
    ClassTooSmall { class: String, count: usize },

    #[error("invalid split fractions: {0}")]
    InvalidSplit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("prototype selection left {retained} row(s); at least {required} are required")]
    EmptySelection { retained: usize, required: usize },

    #[error("{path}: row {row}, column {column}: {message}")]
    Parse {
        path: String,
        row: usize,
        column: usize,
        message: String,
    },

    #[error("missing comparison cell: {0}")]
    MissingCell(String),

    #[error("incomplete block design: {0}")]
    IncompleteBlocks(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("io error on {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
