use thiserror::Error;

/// Errors raised by the numerical layers and the command line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (minimum eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support of the first argument is not contained in the support of the second")]
    SupportViolation,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("quantity is undefined: {0}")]
    Undefined(String),
    #[error("channel spec: {0}")]
    Parse(String),
    #[error("solver backend: {0}")]
    Backend(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
