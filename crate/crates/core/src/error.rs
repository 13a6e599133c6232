use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("order {found} exceeds the bound {bound}")]
    OrderExceeded { bound: usize, found: usize },
    #[error("operation needs a form degree >= 1")]
    ZeroDegree,
    #[error("the zero operator has no principal symbol")]
    ZeroOperator,
    #[error("ambient dimension {0} is outside 1..={max}", max = crate::tensor::MAX_DIM)]
    UnsupportedDimension(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
