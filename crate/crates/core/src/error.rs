use thiserror::Error;

use crate::scalar::Rational;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("not invertible: {0}")]
    NonInvertible(String),

    #[error("singular supermatrix: {0}")]
    Singular(String),

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("gaussian exponent mismatch: s^{left} + s^{right}")]
    GaussExponentMismatch { left: i32, right: i32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration backend mismatch: {0}")]
    Backend(String),

    #[error("integral has no exact rational value: {0}")]
    NonRational(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("coordinate name collision: {0}")]
    NameCollision(String),

    #[error("group law violated: {0}")]
    GroupLaw(String),

    #[error("normalization mismatch, discrepancy factor {factor}")]
    Normalization { factor: String, constant: Option<Rational> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
