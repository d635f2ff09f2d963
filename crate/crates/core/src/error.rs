use thiserror::Error;

/// Errors raised by the library.
///
/// `NotDivisible` and `Invariant` signal a bug rather than bad input: every
/// exact division performed internally is guaranteed to succeed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("the zero composition has no critical box")]
    ZeroComposition,
    #[error("({0}) is not a partition")]
    NotAPartition(String),
    #[error("box ({row},{col}) lies outside the diagram of ({shape})")]
    BoxOutsideDiagram {
        row: usize,
        col: usize,
        shape: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("more than {0} games; use the transition method instead")]
    GuardExceeded(u64),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
