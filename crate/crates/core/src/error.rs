use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle notation parse error at column {column}: {message}")]
    CycleSyntax { column: usize, message: String },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderOverBound { order: String, bound: u64 },

    #[error("generated group has order {found}, expected {expected}")]
    OrderMismatch { expected: String, found: String },

    #[error("enumeration bound {bound} exceeded after {partial} elements")]
    EnumerationBound { bound: u64, partial: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is a perfect square; squares are never primitive roots modulo an odd prime")]
    PerfectSquare(u64),

    #[error("{l} is divisible by {p}")]
    NotCoprime { l: u64, p: u64 },

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: String },

    #[error("class index {0} out of range")]
    ClassOutOfRange(usize),

    #[error("unknown class name {0:?}")]
    UnknownClass(String),

    #[error("character table lacks a power map for the prime {0}")]
    MissingPowerMap(u64),

    #[error("non-rational structure constant (conductor {0})")]
    NonRational(u64),

    #[error("character table computation failed: {0}")]
    CharacterTable(String),

    #[error("width exceeds the search cap of {cap} for class {class}")]
    WidthCap { cap: usize, class: String },

    #[error("counting budget exceeded ({needed} > {budget})")]
    Budget { needed: u64, budget: u64 },

    #[error("witness construction failed: {0}")]
    Witness(String),

    #[error("odd permutation or cycle type where an even one is required")]
    OddPermutation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table syntax error at line {line}, column {column}: {message}")]
    TableSyntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("table validation failed ({relation}): {detail}")]
    TableValidation { relation: String, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
