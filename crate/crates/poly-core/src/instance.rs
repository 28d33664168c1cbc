//! Multilinear threshold instances: a polynomial, an exact rational
//! threshold `a`, and the spacing `δ_D` of the evenly spaced value set
//! `D ⊂ [0,1]`.
//!
//! The spacing reading of `δ_D` is deliberate: only a gap between the
//! threshold and the nearest achievable value below it makes the verifier
//! completeness/soundness analysis work. The instance stores exactly that
//! spacing.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{PolyError, Result};
use crate::poly::{Assignment, MultilinearPoly};

pub type Rat = Ratio<i64>;

/// How far `new` will go to certify that every achievable value lies in
/// [0,1] before giving up.
const RANGE_CHECK_BUDGET: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtpInstance {
    poly: MultilinearPoly,
    threshold: Rat,
    gap: Rat,
    value_set_size: u64,
}

impl MtpInstance {
    /// Validates threshold/gap arithmetic and certifies the value range.
    ///
    /// The range certificate is cheap when coefficient signs allow it and
    /// exhaustive otherwise (up to [`RANGE_CHECK_BUDGET`] variables).
    pub fn new(poly: MultilinearPoly, threshold: Rat, gap: Rat) -> Result<Self> {
        let inst = Self::new_unchecked_range(poly, threshold, gap)?;
        inst.certify_range()?;
        Ok(inst)
    }

    /// Same validation minus the achievable-range certificate, for
    /// constructions (clause arithmetization) where the range holds by
    /// derivation and enumeration would be wasteful.
    pub fn new_unchecked_range(poly: MultilinearPoly, threshold: Rat, gap: Rat) -> Result<Self> {
        if gap <= Rat::zero() {
            return Err(PolyError::InvalidInstance("gap δ_D must be positive".into()));
        }
        if gap > Rat::new(1, 1) {
            return Err(PolyError::InvalidInstance("gap δ_D exceeds the unit range".into()));
        }
        if threshold < Rat::zero() || threshold > Rat::new(1, 1) {
            return Err(PolyError::InvalidInstance(format!(
                "threshold {threshold} outside [0,1]"
            )));
        }
        // a must sit on the grid generated by the spacing.
        let steps = threshold / gap;
        if !steps.is_integer() {
            return Err(PolyError::InvalidInstance(format!(
                "threshold {threshold} not a multiple of the spacing {gap}"
            )));
        }
        let value_set_size = (Rat::new(1, 1) / gap).to_integer() as u64 + 1;
        Ok(MtpInstance {
            poly,
            threshold,
            gap,
            value_set_size,
        })
    }

    fn certify_range(&self) -> Result<()> {
        let den = self.poly.scale_denominator() as i128;
        if self.poly.negative_mass() >= 0 && self.poly.positive_mass() <= den {
            return Ok(());
        }
        if self.poly.num_vars() > RANGE_CHECK_BUDGET {
            return Err(PolyError::InvalidInstance(
                "cannot certify value range: mixed-sign bounds exceed [0,1] and \
                 the instance is too large to enumerate"
                    .into(),
            ));
        }
        for index in 0..(1u64 << self.poly.num_vars()) {
            let y = Assignment::from_index(index, self.poly.num_vars());
            let v = self.poly.evaluate(&y)?;
            if v < 0 || v > den {
                return Err(PolyError::InvalidInstance(format!(
                    "achievable value {v}/{den} outside [0,1] at {y:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn poly(&self) -> &MultilinearPoly {
        &self.poly
    }

    pub fn threshold(&self) -> Rat {
        self.threshold
    }

    pub fn gap(&self) -> Rat {
        self.gap
    }

    pub fn value_set_size(&self) -> u64 {
        self.value_set_size
    }

    pub fn num_vars(&self) -> u32 {
        self.poly.num_vars()
    }

    /// Smallest integer `t` with `t ≥ a · 2^ℓ · coeff_den`. Because the
    /// scaled evaluation is an integer, `P(y) ≥ a ⟺ P'(y) ≥ t`.
    pub fn scaled_threshold(&self) -> i128 {
        let den = self.poly.scale_denominator() as i128;
        let num = *self.threshold.numer() as i128 * den;
        let q = *self.threshold.denom() as i128;
        // ceil(num / q) for positive q
        num.div_euclid(q) + if num.rem_euclid(q) != 0 { 1 } else { 0 }
    }

    /// Exact threshold test `P(y) ≥ a`.
    pub fn meets_threshold(&self, y: &Assignment) -> Result<bool> {
        Ok(self.poly.evaluate(y)? >= self.scaled_threshold())
    }

    /// `P(y)` as an exact rational over the scale denominator.
    pub fn value(&self, y: &Assignment) -> Result<(i128, u128)> {
        Ok((self.poly.evaluate(y)?, self.poly.scale_denominator()))
    }

    /// Whether `P(y)` lies on the δ_D grid (used by downstream tests on
    /// arithmetized instances).
    pub fn value_on_grid(&self, y: &Assignment) -> Result<bool> {
        let (num, den) = self.value(y)?;
        // P(y) = num/den must be a multiple of gap = g_n/g_d:
        // num·g_d ≡ 0 (mod den·g_n)
        let lhs = num * *self.gap.denom() as i128;
        let modulus = den as i128 * *self.gap.numer() as i128;
        Ok(lhs.rem_euclid(modulus) == 0)
    }
}
