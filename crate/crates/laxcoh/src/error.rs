use thiserror::Error;

use crate::lax::membership::ConstraintViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("membership violation: {0}")]
    Membership(ConstraintViolation),
    #[error("non-generic Tyurin data: {0}")]
    NonGeneric(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("not simple flavor: {0}")]
    NotSimple(String),
    #[error("witness inconclusive: {0}")]
    Inconclusive(String),
    #[error("not bounded by zero: {0}")]
    NotBounded(String),
    #[error("independent: {0}")]
    Independent(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Invalid(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
