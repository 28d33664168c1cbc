use thiserror::Error;

#[derive(Debug, Error)]
pub enum SaddleError {
    #[error("not a valid quantum state: {0}")]
    InvalidState(String),

    #[error("not a valid observable: {0}")]
    InvalidObservable(String),

    #[error("infeasible or inconsistent set specification: {0}")]
    InvalidSet(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("conic solver failed: {0}")]
    SolverFailure(String),

    #[error("discretization budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SaddleError>;
