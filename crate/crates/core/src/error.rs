use thiserror::Error;

/// Errors produced by the distance-distribution library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("{routine} did not converge within {iterations} iterations")]
    Convergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("sample has dimension {sample} but the law has dimension {law}")]
    DimensionMismatch { sample: f64, law: f64 },

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("column {column} is constant; standardization is undefined for zero variance")]
    ConstantColumn { column: usize },

    #[error(
        "dataset is not standardized; standardize each column to zero mean and unit \
         standard deviation first"
    )]
    NotStandardized,

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
