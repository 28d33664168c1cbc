use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("assignment length {got} does not match polynomial on {expected} variables")]
    LengthMismatch { expected: u32, got: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("enumeration budget exceeded: {num_vars} variables > budget {budget}")]
    BudgetExceeded { num_vars: u32, budget: u32 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed instance document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PolyError>;
