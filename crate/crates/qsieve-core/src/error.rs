//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An internal polynomial division left a nonzero remainder. For the
    /// formula engines this signals a transcription bug, never a domain error.
    #[error("division not exact: {0}")]
    DivisionNotExact(String),

    /// Rational exponent bookkeeping failed to cancel to an integer, or a
    /// nonzero polynomial would need a negative exponent.
    #[error("exponent assembly failed: {0}")]
    NonIntegerExponent(String),

    #[error("parameter m={m} is not very good for {weyl}")]
    NotVeryGood { weyl: String, m: i64 },

    #[error("bad rank: {0}")]
    BadRank(String),

    #[error("partition parity mismatch: {0}")]
    BadParity(String),

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("unsupported type: {0}")]
    UnsupportedType(String),

    #[error("divisor {d} does not divide m-1={m_minus_1}")]
    BadDivisor { d: u64, m_minus_1: u64 },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("identity violation: {0}")]
    IdentityViolation(String),

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("cyclic sieving violation: {0}")]
    CspViolation(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
