use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid has no nodes")]
    EmptyGrid,

    #[error("grid is not symmetric about zero (min {min}, max {max})")]
    AsymmetricGrid { min: f64, max: f64 },

    #[error("spectra carry different kernel units")]
    UnitMismatch,

    #[error("point outside the evaluation domain: {0}")]
    Domain(String),

    #[error("truncation inadmissible: {0}")]
    Truncation(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
