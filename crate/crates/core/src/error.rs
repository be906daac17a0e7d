use thiserror::Error;

/// Errors reported by counting, bijection, and parsing operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid block sizes: {0}")]
    InvalidBlockSizes(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: needs {needed} objects, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("capacity exceeded: ground set of size {0} does not fit the scheme's bitmask width (64)")]
    CapacityExceeded(usize),

    #[error("inexact division: {0} is not divisible by {1}")]
    InexactDivision(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed star encoding: {0}")]
    MalformedEncoding(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown sequence or check name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
