use thiserror::Error;

/// Errors raised by the matrix kernel, the range computations and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A caller-side precondition did not hold (e.g. a non-Hermitian input to
    /// the Hermitian eigensolver, or a non-contraction handed to the dilation).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The input lies outside the domain of the operation, or outside the
    /// hypothesis under which a characterization applies.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
