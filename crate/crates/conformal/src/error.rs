use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum ConformalError {
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("example {id} has no label but a labeled example is required")]
    UnlabeledExample { id: usize },

    #[error("calibration set is empty")]
    EmptyCalibration,

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("training data contains a single class; both classes are required")]
    SingleClassTraining,

    #[error("no score for example id {id}")]
    MissingScore { id: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("epsilon*(n+1) = {product} is not an integer; the beta-law comparison requires it")]
    NonIntegerEpsilonRank { product: f64 },

    #[error("line {line}: {message}")]
    Ingestion { line: usize, message: String },
}
