use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("file contains no data rows")]
    EmptyFile,
    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    ParseCell {
        row: usize,
        column: usize,
        value: String,
    },
    #[error("column {0} not found")]
    MissingColumn(String),
    #[error("label column has {0} distinct values, at most 2 are supported")]
    TooManyLabels(usize),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("feature {0:?} has no observed value in the training partition")]
    AllMissing(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("no split placed both classes in every partition after {0} attempts")]
    SplitRetriesExhausted(usize),
    #[error("neighborhood size {k} out of range for {n} samples")]
    InvalidNeighborhood { k: usize, n: usize },
    #[error("training data must contain both classes")]
    SingleClass,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("minority class has {0} samples, at least 2 are required")]
    TooFewMinority(usize),
    #[error("covariance matrix is not symmetric")]
    NonSymmetric,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("methods were evaluated on different seed sequences")]
    MismatchedSeeds,
    #[error("model serialization: {0}")]
    Model(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by the input data rather than the configuration
    /// or the experiment itself.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Csv(_)
                | Error::EmptyFile
                | Error::ParseCell { .. }
                | Error::MissingColumn(_)
                | Error::TooManyLabels(_)
                | Error::InvalidDataset(_)
                | Error::AllMissing(_)
        )
    }
}
