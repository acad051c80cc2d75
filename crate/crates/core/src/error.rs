use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("arity {arity} exceeds the configured cap {cap}")]
    ArityCap { arity: usize, cap: usize },
    #[error("unsupported product: {0}")]
    Unsupported(String),
    #[error("invalid deformation: {0}")]
    Deformation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
