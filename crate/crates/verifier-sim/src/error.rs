use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("degenerate instance: the polynomial has zero total weight")]
    DegenerateInstance,

    #[error("assignment length {got} does not match proof length {expected}")]
    LengthMismatch { expected: u32, got: usize },

    #[error("repetition count {0} too large for the exact oracle (limit {1})")]
    RepetitionsTooLarge(u32, u32),

    #[error("enumeration budget exceeded: {num_vars} variables > budget {budget}")]
    BudgetExceeded { num_vars: u32, budget: u32 },

    #[error("weights overflow the sampling integer range")]
    WeightOverflow,

    #[error(transparent)]
    Poly(#[from] poly_core::PolyError),
}

pub type Result<T> = std::result::Result<T, VerifierError>;
