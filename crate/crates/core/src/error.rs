use thiserror::Error;

use crate::hypdsl::ParseError;

/// Errors raised by the arithmetic kernels, the checkers and the DSL evaluator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A p-adic verdict would depend on digits beyond the surviving precision.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A Pochhammer factor vanished where its reciprocal was required.
    #[error("pole: {0}")]
    Pole(String),
    /// An input violates the hypothesis of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-integer value where an integer is required: {0}")]
    NonInteger(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
