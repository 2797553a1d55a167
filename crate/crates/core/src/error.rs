use thiserror::Error;

/// Errors produced by the construction and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} of size {size} exceeds the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        budget: u128,
    },

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("{divisor} does not divide {value}")]
    NotADivisor { divisor: u64, value: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element {0} is not a unit")]
    NotAUnit(u32),

    #[error("difference {a} - {b} of subgroup elements is not a unit")]
    NonUnitDifference { a: u32, b: u32 },

    #[error("not a multiplicative subgroup: {0}")]
    NotASubgroup(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parameter mismatch: {0}")]
    Mismatch(String),

    #[error("table contains unknown entries")]
    UnknownEntries,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
