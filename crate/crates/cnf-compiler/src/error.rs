use thiserror::Error;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("variable {0} out of range")]
    VarOutOfRange(u32),

    #[error("constant {value} does not fit in {width} bits ({signedness})")]
    WidthOverflow {
        value: i64,
        width: u32,
        signedness: &'static str,
    },

    #[error("cannot add bundles of different signedness")]
    SignednessMismatch,

    #[error("enumeration budget exceeded: {0} free variables")]
    BudgetExceeded(u32),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("malformed DIMACS input: {0}")]
    Dimacs(String),

    #[error("polynomial error: {0}")]
    Poly(#[from] poly_core::PolyError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed sidecar document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CnfError>;
