//! Clause sets over integer-indexed literals with a variable-role map.
//!
//! Variables are 1-based. A positive literal is the variable index, a
//! negative literal its negation (DIMACS convention). Roles distinguish the
//! original problem variables from the auxiliaries the encoders introduce;
//! every projection and witness count downstream keys off that map.

use std::ops::Not;

use crate::error::{CnfError, Result};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(i32);

impl Lit {
    pub fn positive(var: u32) -> Lit {
        debug_assert!(var > 0);
        Lit(var as i32)
    }

    pub fn negative(var: u32) -> Lit {
        debug_assert!(var > 0);
        Lit(-(var as i32))
    }

    pub fn from_code(code: i32) -> Option<Lit> {
        (code != 0).then_some(Lit(code))
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn code(self) -> i32 {
        self.0
    }

    /// Truth value under an assignment indexed by variable-1.
    pub fn value_in(self, bits: &[bool]) -> bool {
        bits[(self.var() - 1) as usize] == self.is_positive()
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum VarRole {
    /// The i-th original problem variable (1-based original index).
    Original(u32),
    /// Auxiliary introduced by gate number `gate`.
    Aux { gate: u32 },
}

/// Outcome of fixing the original variables and unit-propagating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    Conflict,
    /// Every variable forced; the formula is satisfied.
    Determined(Vec<bool>),
    /// Propagation stalled with these variables (1-based) still free.
    Stalled(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    roles: Vec<VarRole>,
}

impl CnfFormula {
    /// Formula whose variables `1..=n` are the originals, in order.
    pub fn with_originals(n: u32) -> Self {
        CnfFormula {
            num_vars: n,
            clauses: Vec::new(),
            roles: (1..=n).map(VarRole::Original).collect(),
        }
    }

    pub fn from_parts(roles: Vec<VarRole>, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        let num_vars = roles.len() as u32;
        let mut seen = std::collections::BTreeSet::new();
        for role in &roles {
            if let VarRole::Original(i) = role {
                if !seen.insert(*i) {
                    return Err(CnfError::InvalidFormula(format!(
                        "original index {i} appears twice in the role map"
                    )));
                }
            }
        }
        for clause in &clauses {
            for lit in clause {
                if lit.var() == 0 || lit.var() > num_vars {
                    return Err(CnfError::VarOutOfRange(lit.var()));
                }
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            roles,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn roles(&self) -> &[VarRole] {
        &self.roles
    }

    pub fn role_of(&self, var: u32) -> VarRole {
        self.roles[(var - 1) as usize]
    }

    pub fn max_clause_width(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Formula variable indices holding originals, sorted by original index.
    pub fn original_vars(&self) -> Vec<u32> {
        let mut pairs: Vec<(u32, u32)> = self
            .roles
            .iter()
            .enumerate()
            .filter_map(|(i, r)| match r {
                VarRole::Original(idx) => Some((*idx, i as u32 + 1)),
                VarRole::Aux { .. } => None,
            })
            .collect();
        pairs.sort_unstable();
        pairs.into_iter().map(|(_, v)| v).collect()
    }

    pub fn num_original(&self) -> u32 {
        self.roles
            .iter()
            .filter(|r| matches!(r, VarRole::Original(_)))
            .count() as u32
    }

    pub fn add_clause(&mut self, lits: Vec<Lit>) {
        debug_assert!(lits.iter().all(|l| l.var() >= 1 && l.var() <= self.num_vars));
        self.clauses.push(lits);
    }

    /// Explicit UNSAT marker.
    pub fn add_empty_clause(&mut self) {
        self.clauses.push(Vec::new());
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Allocates a fresh auxiliary variable.
    pub fn add_aux_var(&mut self, gate: u32) -> u32 {
        self.num_vars += 1;
        self.roles.push(VarRole::Aux { gate });
        self.num_vars
    }

    pub fn satisfied_by(&self, bits: &[bool]) -> bool {
        debug_assert_eq!(bits.len(), self.num_vars as usize);
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.value_in(bits)))
    }

    pub fn count_satisfied_clauses(&self, bits: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.value_in(bits)))
            .count()
    }

    /// Fixes the originals to `orig_bits` (indexed by original index − 1)
    /// and unit-propagates to a fixpoint.
    pub fn propagate(&self, orig_bits: &[bool]) -> Propagation {
        let mut assign: Vec<Option<bool>> = vec![None; self.num_vars as usize];
        for (slot, role) in assign.iter_mut().zip(&self.roles) {
            if let VarRole::Original(idx) = role {
                *slot = Some(orig_bits[(*idx - 1) as usize]);
            }
        }
        loop {
            let mut changed = false;
            for clause in &self.clauses {
                if clause.is_empty() {
                    return Propagation::Conflict;
                }
                let mut satisfied = false;
                let mut unassigned: Option<Lit> = None;
                let mut unassigned_count = 0;
                for &lit in clause {
                    match assign[(lit.var() - 1) as usize] {
                        Some(b) => {
                            if b == lit.is_positive() {
                                satisfied = true;
                                break;
                            }
                        }
                        None => {
                            unassigned_count += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned_count {
                    0 => return Propagation::Conflict,
                    1 => {
                        let lit = unassigned.unwrap();
                        assign[(lit.var() - 1) as usize] = Some(lit.is_positive());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let free: Vec<u32> = assign
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.is_none().then_some(i as u32 + 1))
            .collect();
        if free.is_empty() {
            let bits: Vec<bool> = assign.into_iter().map(|a| a.unwrap()).collect();
            if self.satisfied_by(&bits) {
                Propagation::Determined(bits)
            } else {
                Propagation::Conflict
            }
        } else {
            Propagation::Stalled(free)
        }
    }

    /// Number of satisfying assignments extending the given original
    /// assignment. Exact: unit propagation first, exhaustive search over any
    /// residual free variables (capped by `free_budget`).
    pub fn count_extensions(&self, orig_bits: &[bool], free_budget: u32) -> Result<u64> {
        match self.propagate(orig_bits) {
            Propagation::Conflict => Ok(0),
            Propagation::Determined(_) => Ok(1),
            Propagation::Stalled(free) => {
                if free.len() as u32 > free_budget {
                    return Err(CnfError::BudgetExceeded(free.len() as u32));
                }
                let mut bits = vec![false; self.num_vars as usize];
                for (slot, role) in bits.iter_mut().zip(&self.roles) {
                    if let VarRole::Original(idx) = role {
                        *slot = orig_bits[(*idx - 1) as usize];
                    }
                }
                // free vars include every non-original unassigned one; redo
                // the simple thing and enumerate all non-originals
                let aux_vars: Vec<u32> = self
                    .roles
                    .iter()
                    .enumerate()
                    .filter_map(|(i, r)| {
                        matches!(r, VarRole::Aux { .. }).then_some(i as u32 + 1)
                    })
                    .collect();
                if aux_vars.len() as u32 > free_budget {
                    return Err(CnfError::BudgetExceeded(aux_vars.len() as u32));
                }
                let mut count = 0;
                for mask in 0..(1u64 << aux_vars.len()) {
                    for (j, &v) in aux_vars.iter().enumerate() {
                        bits[(v - 1) as usize] = (mask >> j) & 1 == 1;
                    }
                    if self.satisfied_by(&bits) {
                        count += 1;
                    }
                }
                Ok(count)
            }
        }
    }

    /// Total number of satisfying assignments, counted by projecting on the
    /// originals and summing extensions.
    pub fn count_models(&self, free_budget: u32) -> Result<u64> {
        let n = self.num_original();
        if n > 26 {
            return Err(CnfError::BudgetExceeded(n));
        }
        let mut total = 0;
        let mut orig_bits = vec![false; n as usize];
        for index in 0..(1u64 << n) {
            for (i, slot) in orig_bits.iter_mut().enumerate() {
                *slot = (index >> (n as usize - 1 - i)) & 1 == 1;
            }
            total += self.count_extensions(&orig_bits, free_budget)?;
        }
        Ok(total)
    }

    /// Original assignments (as lexicographically ordered bit vectors) that
    /// extend to at least one satisfying assignment.
    pub fn project_witnesses(&self, free_budget: u32) -> Result<Vec<Vec<bool>>> {
        let n = self.num_original();
        if n > 26 {
            return Err(CnfError::BudgetExceeded(n));
        }
        let mut out = Vec::new();
        let mut orig_bits = vec![false; n as usize];
        for index in 0..(1u64 << n) {
            for (i, slot) in orig_bits.iter_mut().enumerate() {
                *slot = (index >> (n as usize - 1 - i)) & 1 == 1;
            }
            if self.count_extensions(&orig_bits, free_budget)? > 0 {
                out.push(orig_bits.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagation_forces_tseytin_aux() {
        // g <-> x1 AND x2 over originals x1,x2
        let mut f = CnfFormula::with_originals(2);
        let g = f.add_aux_var(0);
        let (x1, x2, g) = (Lit::positive(1), Lit::positive(2), Lit::positive(g));
        f.add_clause(vec![!g, x1]);
        f.add_clause(vec![!g, x2]);
        f.add_clause(vec![g, !x1, !x2]);
        for (bits, expected_g) in [
            ([false, false], false),
            ([false, true], false),
            ([true, false], false),
            ([true, true], true),
        ] {
            match f.propagate(&bits) {
                Propagation::Determined(full) => assert_eq!(full[2], expected_g),
                other => panic!("unexpected propagation outcome {other:?}"),
            }
        }
        assert_eq!(f.count_models(10).unwrap(), 4);
    }

    #[test]
    fn empty_clause_kills_everything() {
        let mut f = CnfFormula::with_originals(1);
        f.add_empty_clause();
        assert_eq!(f.count_models(10).unwrap(), 0);
    }

    #[test]
    fn duplicate_original_roles_rejected() {
        let roles = vec![VarRole::Original(1), VarRole::Original(1)];
        assert!(CnfFormula::from_parts(roles, vec![]).is_err());
    }
}
