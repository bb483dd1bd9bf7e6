use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid load vector: {0}")]
    InvalidLoadVector(String),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: need {required} states, budget allows {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("unknown claim: {0}")]
    UnknownClaim(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
