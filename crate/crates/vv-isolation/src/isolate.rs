//! The k-sweep: one output formula per hash-row count k ∈ {1..N+1}.

use cnf_compiler::{CnfError, CnfFormula};
use thiserror::Error;

use crate::encode::conjoin_rows;
use crate::hash::HashConstraint;

#[derive(Debug, Error)]
pub enum IsolationError {
    #[error("formula has no original variables")]
    NoOriginals,

    #[error("enumeration budget exceeded: {0} original variables")]
    BudgetExceeded(u32),

    #[error(transparent)]
    Cnf(#[from] CnfError),
}

pub type Result<T> = std::result::Result<T, IsolationError>;

/// Conjoins the first k rows of a single sampled hash onto the formula, for
/// every k ∈ {1..N+1}. Output index `k-1` holds formula_k. Sharing one row
/// stream across the sweep keeps the outputs nested, which preserves the
/// soundness direction trivially and makes runs reproducible from the seed.
pub fn isolate(cnf: &CnfFormula, seed: u64) -> Result<Vec<CnfFormula>> {
    let n = cnf.num_original();
    if n == 0 {
        return Err(IsolationError::NoOriginals);
    }
    let hash = HashConstraint::sample(n, n + 1, seed);
    Ok((1..=(n + 1) as usize)
        .map(|k| conjoin_rows(cnf, &hash.rows[..k]))
        .collect())
}

/// Exhaustively counts original-projection witnesses of each formula_k and
/// reports the first k with exactly one, if any. Counting evaluates the
/// hash rows directly over the base formula's witness set, which agrees
/// with the Tseytin-encoded formulas because every extension is unique.
pub fn isolation_success(cnf: &CnfFormula, seed: u64, budget: u32) -> Result<Option<u32>> {
    let n = cnf.num_original();
    if n == 0 {
        return Err(IsolationError::NoOriginals);
    }
    if n > budget {
        return Err(IsolationError::BudgetExceeded(n));
    }
    let hash = HashConstraint::sample(n, n + 1, seed);
    let base_witnesses = cnf.project_witnesses(budget)?;
    for k in 1..=(n + 1) as usize {
        let survivors = base_witnesses
            .iter()
            .filter(|bits| hash.prefix_satisfied(k, bits))
            .count();
        if survivors == 1 {
            return Ok(Some(k as u32));
        }
    }
    Ok(None)
}
