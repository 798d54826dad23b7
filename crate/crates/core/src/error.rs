use thiserror::Error;

use crate::exact::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A non-increasing nonnegative sequence was required.
    #[error("sequence is not non-increasing and nonnegative (first violation at index {index})")]
    MonotonicityViolation { index: u64 },

    #[error("conjugate exponent is undefined for p = 1")]
    ConjugateUndefined,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rate must be strictly positive, got {}", format_rational(.0))]
    NonPositiveRate(Box<Rational>),

    #[error("invalid rational {input:?}: {reason}")]
    ParseRational { input: String, reason: &'static str },

    #[error("line {line}: {reason}")]
    ParseSequence { line: usize, reason: String },

    /// An exact identity computed along two routes disagreed. Always a bug.
    #[error("{identity} broken: {} != {}", format_rational(.lhs), format_rational(.rhs))]
    IdentityBroken {
        identity: &'static str,
        lhs: Box<Rational>,
        rhs: Box<Rational>,
    },

    #[error("requested precision not reached (achieved width {achieved})")]
    PrecisionNotReached { achieved: String },

    #[error("fixed-point accumulator overflow")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
