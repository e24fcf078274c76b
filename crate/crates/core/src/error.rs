use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root set must contain at least one element")]
    EmptyRootSet,
    #[error("root m_{index} is zero; roots must be positive integers")]
    ZeroRoot { index: usize },
    #[error("cannot parse root {token:?}: {reason}")]
    InvalidRoot { token: String, reason: String },
    #[error("order i = {i} exceeds root-set size n = {n}")]
    OrderExceedsSize { i: usize, n: usize },
    #[error("order i must be at least 1")]
    ZeroOrder,
    #[error("invalid exponent vector: {0}")]
    InvalidExponentVector(String),
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("unknown family {0:?} (expected pascal or stirling1)")]
    UnknownFamily(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
