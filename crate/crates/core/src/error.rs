use thiserror::Error;

/// Errors raised by the exact evaluators and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("degree bound mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot parse {input:?} as a rational: {reason}")]
    ParseRational { input: String, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("sums differ: the comparison requires equal totals")]
    UnequalSums,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged matrix: row {row} has {found} columns, expected {expected}")]
    RaggedMatrix { row: usize, found: usize, expected: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("exponent p = {p} outside the open interval ({lo}, {hi})")]
    InvalidPRange { p: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
