use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("lattice is degenerate")]
    Degenerate,

    #[error("lattice is not negative definite")]
    NotNegativeDefinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("chain map does not commute with the boundaries")]
    NotAChainMap,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
