use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence {seq} is not strictly increasing at position {index}")]
    NonIncreasing { seq: char, index: usize },
    #[error("interval {index} is reversed: a_{index} = {a} > b_{index} = {b}")]
    IntervalReversed { index: usize, a: usize, b: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("sequences have different lengths ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("operation requires a nonempty pair (s >= 1)")]
    EmptyPair,
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("ideals live in different rings ({0} vs {1} variables)")]
    ArityMismatch(usize, usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("monomial lies in the ideal")]
    NotInQuotient,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("ideal is zero")]
    ZeroIdeal,
    #[error("too many generators for subset walk: {count} > {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("instance exceeds cap: {what} = {value} > {cap}")]
    TooLarge { what: &'static str, value: usize, cap: usize },
    #[error("Betti table is empty")]
    EmptyTable,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: &'static str, found: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
