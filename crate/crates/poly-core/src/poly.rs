//! Sparse multilinear polynomials over Boolean variables with exact
//! fixed-point coefficients.
//!
//! A polynomial on `N` variables is a map from variable subsets
//! `S ⊆ {1..N}` to integer coefficients `v_S`. The real coefficient is
//! `β_S = v_S / (2^scale_bits · coeff_den)`. The extra integer factor
//! `coeff_den` exists so that clause arithmetization (which divides by the
//! clause count `m`) stays exact for every `m`, not just powers of two.

use std::collections::BTreeMap;

use crate::error::{PolyError, Result};

/// A Boolean assignment to the variables `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Builds the assignment from a counter, treating variable 1 as the
    /// most significant position. Counting `index` up from zero therefore
    /// enumerates assignments in lexicographic order `(y_1, y_2, ...)`.
    pub fn from_index(index: u64, num_vars: u32) -> Self {
        let bits = (0..num_vars)
            .map(|i| (index >> (num_vars - 1 - i)) & 1 == 1)
            .collect();
        Assignment { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn get(&self, var: u32) -> bool {
        self.bits[(var - 1) as usize]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices (1-based) of the variables set to 1.
    pub fn ones(&self) -> Vec<u32> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u32 + 1))
            .collect()
    }
}

/// Sparse degree-bounded multilinear polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    num_vars: u32,
    degree_bound: u32,
    scale_bits: u32,
    coeff_den: u64,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MultilinearPoly {
    /// Builds a polynomial with `β_S = v_S / 2^scale_bits`.
    pub fn new(
        num_vars: u32,
        degree_bound: u32,
        scale_bits: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        Self::with_denominator(num_vars, degree_bound, scale_bits, 1, terms)
    }

    /// Builds a polynomial with `β_S = v_S / (2^scale_bits · coeff_den)`.
    pub fn with_denominator(
        num_vars: u32,
        degree_bound: u32,
        scale_bits: u32,
        coeff_den: u64,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        if degree_bound > num_vars {
            return Err(PolyError::InvalidTerm(format!(
                "degree bound {degree_bound} exceeds variable count {num_vars}"
            )));
        }
        if coeff_den == 0 {
            return Err(PolyError::InvalidTerm("zero coefficient denominator".into()));
        }
        if scale_bits >= 63 {
            return Err(PolyError::InvalidTerm(format!(
                "scale_bits {scale_bits} too large for exact arithmetic"
            )));
        }
        let mut map = BTreeMap::new();
        for (mut vars, coeff) in terms {
            vars.sort_unstable();
            let before = vars.len();
            vars.dedup();
            if vars.len() != before {
                return Err(PolyError::InvalidTerm(format!(
                    "duplicate variable in term {vars:?}"
                )));
            }
            if let Some(&v) = vars.iter().find(|&&v| v == 0 || v > num_vars) {
                return Err(PolyError::InvalidTerm(format!(
                    "variable {v} out of range 1..={num_vars}"
                )));
            }
            if vars.len() as u32 > degree_bound {
                return Err(PolyError::InvalidTerm(format!(
                    "term {vars:?} exceeds degree bound {degree_bound}"
                )));
            }
            if coeff == 0 {
                // Zero coefficients are never stored.
                continue;
            }
            if map.insert(vars.clone(), coeff).is_some() {
                return Err(PolyError::InvalidTerm(format!("duplicate term key {vars:?}")));
            }
        }
        Ok(MultilinearPoly {
            num_vars,
            degree_bound,
            scale_bits,
            coeff_den,
            terms: map,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn scale_bits(&self) -> u32 {
        self.scale_bits
    }

    pub fn coeff_den(&self) -> u64 {
        self.coeff_den
    }

    /// The full denominator `2^scale_bits · coeff_den`.
    pub fn scale_denominator(&self) -> u128 {
        (1u128 << self.scale_bits) * self.coeff_den as u128
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, vars: &[u32]) -> i64 {
        let mut key = vars.to_vec();
        key.sort_unstable();
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Number of bits needed for the largest |v_S| (the `k` of the adder
    /// network construction). Zero for the empty polynomial.
    pub fn coeff_bits(&self) -> u32 {
        self.terms
            .values()
            .map(|v| 64 - v.unsigned_abs().leading_zeros())
            .max()
            .unwrap_or(0)
    }

    /// Largest degree actually used by a stored term.
    pub fn max_term_width(&self) -> u32 {
        self.terms.keys().map(|k| k.len() as u32).max().unwrap_or(0)
    }

    /// Σ_S |v_S|, the scaled total weight (numerator of B).
    pub fn total_weight(&self) -> u128 {
        self.terms.values().map(|v| v.unsigned_abs() as u128).sum()
    }

    /// Σ over positive coefficients (upper bound on any scaled value).
    pub fn positive_mass(&self) -> i128 {
        self.terms.values().filter(|&&v| v > 0).map(|&v| v as i128).sum()
    }

    /// Σ over negative coefficients (lower bound on any scaled value).
    pub fn negative_mass(&self) -> i128 {
        self.terms.values().filter(|&&v| v < 0).map(|&v| v as i128).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact scaled evaluation: returns `Σ_S v_S · Π_{i∈S} y_i`, which is
    /// `2^scale_bits · coeff_den · P(y)`, in integer arithmetic.
    pub fn evaluate(&self, y: &Assignment) -> Result<i128> {
        if y.len() != self.num_vars as usize {
            return Err(PolyError::LengthMismatch {
                expected: self.num_vars,
                got: y.len(),
            });
        }
        let mut acc: i128 = 0;
        for (vars, &coeff) in &self.terms {
            if vars.iter().all(|&v| y.get(v)) {
                acc += coeff as i128;
            }
        }
        Ok(acc)
    }
}
