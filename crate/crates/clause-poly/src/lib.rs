//! Clause arithmetization: CNF to multilinear threshold instances.
//!
//! Each clause becomes its multilinear satisfaction indicator
//! `Q_j = 1 − Π_{ℓ∈C_j}(1 − x̃_ℓ)`, so `P(x) = (1/m)·Σ_j Q_j(x)` is exactly
//! the fraction of satisfied clauses, the threshold is `a = 1`, and the
//! value grid has spacing `δ_D = 1/m`. The witness set of `(P, a)` is the
//! satisfying-assignment set of the formula, variable for variable.
//!
//! (A literal product `Π x̃_ℓ` would be an AND arithmetization and would
//! not satisfy a one-clause completeness argument; the indicator form is
//! the one that does.)

use std::collections::BTreeMap;

use cnf_compiler::{CircuitBuilder, CnfError, CnfFormula, Lit, Wire};
use poly_core::{MtpInstance, MultilinearPoly, PolyError, Rat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClausePolyError {
    #[error("clause {index} has width {width}, above the limit {max_width}; width-reduce first")]
    ClauseTooWide {
        index: usize,
        width: usize,
        max_width: u32,
    },

    #[error("width limit {0} below 3 is not reducible")]
    WidthLimitTooSmall(u32),

    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Cnf(#[from] CnfError),
}

pub type Result<T> = std::result::Result<T, ClausePolyError>;

/// Multilinear indicator of one clause as a coefficient map.
fn clause_indicator(clause: &[Lit]) -> BTreeMap<Vec<u32>, i64> {
    // dedup literals; a complementary pair makes the clause a tautology
    let mut lits: Vec<Lit> = clause.to_vec();
    lits.sort_unstable();
    lits.dedup();
    let tautology = lits
        .iter()
        .any(|&l| lits.binary_search(&!l).is_ok());
    let mut q = BTreeMap::new();
    if tautology {
        q.insert(Vec::new(), 1);
        return q;
    }

    // product of (1 - x̃_ℓ) over the clause
    let mut product: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    product.insert(Vec::new(), 1);
    for lit in lits {
        let v = lit.var();
        let mut next: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (vars, coeff) in &product {
            // positive literal: factor (1 − x_v); negative literal: factor x_v
            let mut with_v = vars.clone();
            let pos = with_v.binary_search(&v).unwrap_or_else(|i| i);
            with_v.insert(pos, v);
            if lit.is_positive() {
                *next.entry(vars.clone()).or_insert(0) += coeff;
                *next.entry(with_v).or_insert(0) -= coeff;
            } else {
                *next.entry(with_v).or_insert(0) += coeff;
            }
        }
        next.retain(|_, c| *c != 0);
        product = next;
    }

    // Q = 1 − product
    for (vars, coeff) in product {
        *q.entry(vars).or_insert(0) -= coeff;
    }
    *q.entry(Vec::new()).or_insert(0) += 1;
    q.retain(|_, c| *c != 0);
    q
}

/// Deterministic reduction from CNF to a threshold instance with `a = 1`
/// and `δ_D = 1/m`. Every clause must have (deduplicated) width at most
/// `max_width`.
pub fn cnf_to_mtp(cnf: &CnfFormula, max_width: u32) -> Result<MtpInstance> {
    let m = cnf.num_clauses() as i64;
    if m == 0 {
        // vacuously satisfied everywhere: the constant-1 polynomial
        let poly = MultilinearPoly::new(cnf.num_vars(), 0, 0, vec![(vec![], 1)])?;
        return Ok(MtpInstance::new_unchecked_range(
            poly,
            Rat::new(1, 1),
            Rat::new(1, 1),
        )?);
    }

    let mut total: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let mut degree = 0usize;
    for (index, clause) in cnf.clauses().iter().enumerate() {
        let mut lits: Vec<Lit> = clause.clone();
        lits.sort_unstable_by_key(|l| l.var());
        lits.dedup();
        if lits.len() > max_width as usize {
            return Err(ClausePolyError::ClauseTooWide {
                index,
                width: lits.len(),
                max_width,
            });
        }
        for (vars, coeff) in clause_indicator(clause) {
            degree = degree.max(vars.len());
            *total.entry(vars).or_insert(0) += coeff;
        }
    }
    total.retain(|_, c| *c != 0);

    let poly = MultilinearPoly::with_denominator(
        cnf.num_vars(),
        degree as u32,
        0,
        m as u64,
        total,
    )?;
    Ok(MtpInstance::new_unchecked_range(
        poly,
        Rat::new(1, 1),
        Rat::new(1, m),
    )?)
}

/// Splits wide clauses with Tseytin OR gates over their tails until every
/// clause has width ≤ k. The gate variables are functionally forced, so the
/// satisfying-assignment count over the original variables — and the unique
/// extension per assignment — are both preserved.
pub fn width_reduce(cnf: &CnfFormula, k: u32) -> Result<CnfFormula> {
    if k < 3 {
        return Err(ClausePolyError::WidthLimitTooSmall(k));
    }
    if cnf.max_clause_width() <= k as usize {
        return Ok(cnf.clone());
    }
    // start from an empty clause list, re-adding clauses as we walk so the
    // output order stays deterministic
    let shell = CnfFormula::from_parts(cnf.roles().to_vec(), Vec::new())?;
    let mut b = CircuitBuilder::extend(shell);
    for clause in cnf.clauses() {
        if clause.len() <= k as usize {
            b.clause(clause.clone());
            continue;
        }
        let mut head: Vec<Lit> = clause[..(k - 1) as usize].to_vec();
        let tail = &clause[(k - 1) as usize..];
        // balanced tree of binary OR gates over the tail
        let mut layer: Vec<Wire> = tail.iter().map(|&l| Wire::Lit(l)).collect();
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(c) => next.push(b.or2(a, c)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        match layer.pop().unwrap() {
            Wire::Lit(g) => {
                head.push(g);
                b.clause(head);
            }
            Wire::Const(true) => {} // tail folded away; clause trivially true
            Wire::Const(false) => b.clause(head),
        }
    }
    Ok(b.finish())
}
