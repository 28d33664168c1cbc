//! The simulated verifier description: weighted monomial table, acceptance
//! thresholds, repetition count, and query accounting.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use poly_core::{Assignment, MtpInstance, Rat};

use crate::error::{Result, VerifierError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub vars: Vec<u32>,
    /// |v_S|, over the instance's scale denominator.
    pub weight: u64,
    pub positive: bool,
}

impl Monomial {
    pub fn active_in(&self, y: &Assignment) -> bool {
        self.vars.iter().all(|&v| y.get(v))
    }
}

#[derive(Clone, Debug)]
pub struct VerifierSpec {
    monomials: Vec<Monomial>,
    cumulative: Vec<u128>,
    weight_den: u128,
    total_weight: u128,
    threshold: Rat,
    gap: Rat,
    fail_budget: Rat,
    repetitions: u32,
    query_bound: u32,
    proof_len: u32,
}

fn big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl VerifierSpec {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn weight_den(&self) -> u128 {
        self.weight_den
    }

    pub fn total_weight(&self) -> u128 {
        self.total_weight
    }

    /// B = Σ_j |β_j| as an exact rational.
    pub fn b_value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.total_weight),
            BigInt::from(self.weight_den),
        )
    }

    pub fn threshold(&self) -> Rat {
        self.threshold
    }

    pub fn gap(&self) -> Rat {
        self.gap
    }

    pub fn fail_budget(&self) -> Rat {
        self.fail_budget
    }

    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    /// Overrides the repetition count (keeps every other parameter).
    pub fn with_repetitions(mut self, t: u32) -> Self {
        self.repetitions = t;
        self
    }

    pub fn query_bound(&self) -> u32 {
        self.query_bound
    }

    pub fn proof_len(&self) -> u32 {
        self.proof_len
    }

    /// c = (a + δ_D)/B, before clamping.
    pub fn completeness_raw(&self) -> BigRational {
        (big(self.threshold) + big(self.gap)) / self.b_value()
    }

    /// s = (a − δ_D)/B, before clamping.
    pub fn soundness_raw(&self) -> BigRational {
        (big(self.threshold) - big(self.gap)) / self.b_value()
    }

    /// Raw value clamped into [0,1]; acceptance probabilities live there.
    pub fn completeness(&self) -> BigRational {
        clamp_unit(self.completeness_raw())
    }

    pub fn soundness(&self) -> BigRational {
        clamp_unit(self.soundness_raw())
    }

    /// c − s = 2δ_D/B, exactly.
    pub fn gap_identity_holds(&self) -> bool {
        let lhs = self.completeness_raw() - self.soundness_raw();
        let rhs = BigRational::from(BigInt::from(2)) * big(self.gap) / self.b_value();
        lhs == rhs
    }

    /// Active positive and negative weight at a proof: the numerators of
    /// B·p₊ and B·p₋ over `weight_den`.
    pub fn activation(&self, y: &Assignment) -> Result<(u128, u128)> {
        if y.len() != self.proof_len as usize {
            return Err(VerifierError::LengthMismatch {
                expected: self.proof_len,
                got: y.len(),
            });
        }
        let mut pos = 0u128;
        let mut neg = 0u128;
        for m in &self.monomials {
            if m.active_in(y) {
                if m.positive {
                    pos += m.weight as u128;
                } else {
                    neg += m.weight as u128;
                }
            }
        }
        Ok((pos, neg))
    }

    pub(crate) fn cumulative(&self) -> &[u128] {
        &self.cumulative
    }

    /// Integer acceptance threshold for the round sum: the verifier accepts
    /// iff Σ v_t ≥ θ, where θ = ⌈a·T/B⌉ computed exactly.
    pub fn sum_threshold(&self) -> i128 {
        let num = BigInt::from(*self.threshold.numer())
            * BigInt::from(self.weight_den)
            * BigInt::from(self.repetitions);
        let den = BigInt::from(*self.threshold.denom()) * BigInt::from(self.total_weight);
        // ceil for positive den
        let (q, r) = (num.clone() / &den, num % &den);
        let mut theta = q;
        if !r.is_zero() && !r.is_negative() {
            theta += 1;
        }
        // the sum is confined to [−T, T]; clamp just outside
        let t = i128::from(self.repetitions);
        theta.max(BigInt::from(-t - 1)).min(BigInt::from(t + 1)) // fits i128 now
            .try_into()
            .expect("clamped threshold fits i128")
    }
}

fn clamp_unit(x: BigRational) -> BigRational {
    if x < BigRational::zero() {
        BigRational::zero()
    } else if x > BigRational::one() {
        BigRational::one()
    } else {
        x
    }
}

/// Builds the verifier description for an instance: monomial table in
/// canonical order, total weight B, thresholds, and the repetition count
/// T = ⌈2·ln(2/δ_fail)/δ_D²⌉ for the configured failure budget.
pub fn build_verifier(inst: &MtpInstance, fail_budget: Rat) -> Result<VerifierSpec> {
    let poly = inst.poly();
    if poly.is_zero() {
        return Err(VerifierError::DegenerateInstance);
    }
    let monomials: Vec<Monomial> = poly
        .terms()
        .map(|(vars, coeff)| Monomial {
            vars: vars.to_vec(),
            weight: coeff.unsigned_abs(),
            positive: coeff > 0,
        })
        .collect();
    let mut cumulative = Vec::with_capacity(monomials.len());
    let mut acc = 0u128;
    for m in &monomials {
        acc = acc
            .checked_add(m.weight as u128)
            .ok_or(VerifierError::WeightOverflow)?;
        cumulative.push(acc);
    }
    let query_bound = monomials.iter().map(|m| m.vars.len() as u32).max().unwrap_or(0);

    let delta = *inst.gap().numer() as f64 / *inst.gap().denom() as f64;
    let fail = *fail_budget.numer() as f64 / *fail_budget.denom() as f64;
    let t = (2.0 * (2.0 / fail).ln() / (delta * delta)).ceil();
    if !(t.is_finite() && t < u32::MAX as f64) {
        return Err(VerifierError::WeightOverflow);
    }

    Ok(VerifierSpec {
        monomials,
        cumulative,
        weight_den: poly.scale_denominator(),
        total_weight: acc,
        threshold: inst.threshold(),
        gap: inst.gap(),
        fail_budget,
        repetitions: (t as u32).max(1),
        query_bound,
        proof_len: poly.num_vars(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::MultilinearPoly;

    #[test]
    fn clamps_completeness_above_one() {
        // P = y1y2, a = 1, δ = 1/2 → B = 1, c_raw = 3/2, s = 1/2
        let p = MultilinearPoly::new(2, 2, 0, vec![(vec![1, 2], 1)]).unwrap();
        let inst = MtpInstance::new(p, Rat::new(1, 1), Rat::new(1, 2)).unwrap();
        let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
        assert_eq!(spec.completeness_raw(), big(Rat::new(3, 2)));
        assert_eq!(spec.completeness(), big(Rat::new(1, 1)));
        assert_eq!(spec.soundness(), big(Rat::new(1, 2)));
        assert!(spec.gap_identity_holds());
    }

    #[test]
    fn symmetric_pair_doubles_weight() {
        // β = ±1/4 on two monomials → B = 1/2
        let p =
            MultilinearPoly::new(2, 2, 2, vec![(vec![1], 1), (vec![1, 2], -1)]).unwrap();
        let inst = MtpInstance::new(p, Rat::new(0, 1), Rat::new(1, 4)).unwrap();
        let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
        assert_eq!(spec.b_value(), big(Rat::new(1, 2)));
    }

    #[test]
    fn zero_polynomial_is_degenerate() {
        let p = MultilinearPoly::new(2, 2, 1, vec![]).unwrap();
        let inst = MtpInstance::new(p, Rat::new(1, 2), Rat::new(1, 2)).unwrap();
        assert!(matches!(
            build_verifier(&inst, Rat::new(1, 3)),
            Err(VerifierError::DegenerateInstance)
        ));
    }

    #[test]
    fn repetition_count_follows_hoeffding_formula() {
        let p = MultilinearPoly::new(1, 1, 0, vec![(vec![1], 1)]).unwrap();
        let inst = MtpInstance::new(p, Rat::new(1, 1), Rat::new(1, 1)).unwrap();
        let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
        // 2·ln 6 ≈ 3.58
        assert_eq!(spec.repetitions(), 4);
        let inst2 = {
            let p = MultilinearPoly::new(1, 1, 2, vec![(vec![1], 4)]).unwrap();
            MtpInstance::new(p, Rat::new(1, 1), Rat::new(1, 4)).unwrap()
        };
        let spec2 = build_verifier(&inst2, Rat::new(1, 3)).unwrap();
        assert_eq!(spec2.repetitions(), (2.0f64 * 6.0f64.ln() * 16.0).ceil() as u32);
    }

    #[test]
    fn sum_threshold_examples() {
        // P = y1, a = 1, B = 1 → θ = T
        let p = MultilinearPoly::new(1, 1, 0, vec![(vec![1], 1)]).unwrap();
        let inst = MtpInstance::new(p, Rat::new(1, 1), Rat::new(1, 1)).unwrap();
        let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
        assert_eq!(spec.sum_threshold(), i128::from(spec.repetitions()));
    }
}
