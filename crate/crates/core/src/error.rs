use thiserror::Error;

/// Errors raised by the exact arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid cyclotomic order {0} (need n >= {1})")]
    InvalidOrder(u64, u64),
    #[error("elements belong to different cyclotomic fields (n = {0} vs n = {1})")]
    ContextMismatch(usize, usize),
    #[error("exponent {t} is not coprime to n = {n}")]
    NotCoprime { t: i64, n: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {dim} exceeds the guardrail of {limit}; force to override")]
    Guardrail { dim: usize, limit: usize },
    #[error("n = {0} must be odd for this identity")]
    EvenOrder(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
