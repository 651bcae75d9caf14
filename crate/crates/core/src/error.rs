use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("singular element: {0}")]
    Singular(String),
    #[error("infeasible q: {0}")]
    Infeasible(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("truncation overflow: {0}")]
    Truncation(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
