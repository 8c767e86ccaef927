use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedField(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field of size {size} is too small: need at least {needed} distinct elements")]
    FieldTooSmall { size: usize, needed: usize },
    #[error("{0} requires a finite field")]
    NeedsFiniteField(&'static str),
    #[error("{what}: size {got} exceeds cap {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("improper coloring: {0}")]
    ImproperColoring(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("assignment falsifies clause {0}")]
    Unsatisfied(usize),
    #[error("no independent representation found after {0} attempts")]
    RetryLimit(usize),
    #[error("decoding failed: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
