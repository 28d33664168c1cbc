//! Exact acceptance probabilities.
//!
//! One round returns +1 with probability u/w, −1 with v/w and 0 with z/w,
//! where (u, v, z) are integer weights and w = u + v + z. Acceptance after
//! T rounds is Pr[Σ_t v_t ≥ θ].
//!
//! `convolution_tail_reference` is the straightforward dynamic-programming
//! convolution of the round distribution. The production path
//! (`trinomial_tail`) computes the same sum by conditioning on the number K
//! of nonzero rounds: the inner binomial tail I(K) over a moving threshold
//! obeys a two-term recurrence whose boundary values are single
//! multinomial terms, maintained with exact small-integer updates. That
//! turns an O(T²)-cell convolution into O(T) big-integer operations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, VerifierError};
use crate::spec::VerifierSpec;

/// Repetition cap for the exact oracle.
pub const EXACT_ORACLE_LIMIT: u32 = 10_000;

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow_u128(base: u128, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// C(n, k) by the multiplicative formula; exact at every step.
fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Pr[Bin(t, num/den) ≥ j0].
fn binomial_tail(num: u128, den: u128, t: u32, j0: i128) -> BigRational {
    if j0 <= 0 {
        return BigRational::one();
    }
    if j0 > i128::from(t) {
        return BigRational::zero();
    }
    let q = den - num;
    if num == 0 {
        return BigRational::zero(); // j0 ≥ 1 but the count is 0 a.s.
    }
    if q == 0 {
        return BigRational::one(); // count is t a.s. and j0 ≤ t
    }
    let j0 = j0 as u64;
    let t64 = u64::from(t);
    let unum = BigUint::from(num);
    let uq = BigUint::from(q);
    let mut binom = binomial(t64, j0);
    let mut upow = pow_u128(num, j0 as u32);
    let mut qpow = pow_u128(q, t - j0 as u32);
    let mut total = BigUint::zero();
    for j in j0..=t64 {
        total += &binom * &upow * &qpow;
        if j < t64 {
            binom *= t64 - j;
            binom /= j + 1;
            upow *= &unum;
            qpow /= &uq;
        }
    }
    ratio(total, pow_u128(den, t))
}

/// Pr[Σ v_t ≥ θ] for T i.i.d. rounds with weights (u, v, z).
pub fn trinomial_tail(u: u128, v: u128, z: u128, t: u32, theta: i128) -> BigRational {
    let w = u + v + z;
    assert!(w > 0, "zero total weight");
    if theta <= -i128::from(t) {
        return BigRational::one();
    }
    if theta > i128::from(t) {
        return BigRational::zero();
    }
    if u == 0 && v == 0 {
        // the sum is identically zero
        return if theta <= 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    if u == 0 {
        // S = −Bin(t, v/w): S ≥ θ ⟺ Bin ≤ −θ
        let m = -theta; // ≥ −t ⇒ fine
        let tail_above = binomial_tail(v, w, t, m + 1);
        return BigRational::one() - tail_above;
    }
    if v == 0 {
        // S = Bin(t, u/w)
        return binomial_tail(u, w, t, theta);
    }
    if z == 0 {
        // S = 2·Bin(t, u/w) − t: S ≥ θ ⟺ Bin ≥ ⌈(t+θ)/2⌉
        let j0 = (i128::from(t) + theta + 1).div_euclid(2);
        return binomial_tail(u, w, t, j0);
    }

    // general case: condition on K = number of nonzero rounds;
    //   Pr·w^T = Σ_K C(T,K)·z^{T−K}·I(K),
    //   I(K) = Σ_{j ≥ j0(K)} C(K,j) u^j v^{K−j},  j0(K) = max(0, ⌈(K+θ)/2⌉)
    let t64 = u64::from(t);
    let ub = BigUint::from(u);
    let vb = BigUint::from(v);
    let uv = BigUint::from(u + v);

    let ceil_half = |x: i128| -> i128 { (x + 1).div_euclid(2) };
    let j0_of = |k: i128| -> i128 { ceil_half(k + theta).max(0) };

    // rows K < θ have an empty region; start where it becomes nonempty
    let k0 = theta.max(0) as u64;

    // boundary state at K = k0
    let mut j0 = j0_of(k0 as i128);
    let (mut big_i, mut a0, mut am);
    if theta > 0 {
        // j0(k0) = θ = k0: single diagonal term
        big_i = ub.pow(k0 as u32);
        a0 = big_i.clone();
        am = binomial(k0, k0 - 1) * ub.pow(k0 as u32 - 1) * &vb;
    } else {
        big_i = BigUint::one();
        a0 = BigUint::one();
        am = BigUint::zero();
    }
    let mut rowsum = uv.pow(k0 as u32);

    let mut binom = binomial(t64, k0); // C(T, K)
    let mut zpow = pow_u128(z, t - k0 as u32); // z^{T−K}
    let zb = BigUint::from(z);

    let mut total = &binom * &zpow * &big_i;

    for k in (k0 + 1)..=t64 {
        let jn = j0_of(k as i128);
        debug_assert!(jn == j0 || jn == j0 + 1);
        let (new_i, new_a0, new_am);
        if jn == 0 {
            // clamped: I is the full row sum
            new_i = &rowsum * &uv;
            new_a0 = &a0 * &vb; // A(K,0) = v^K
            new_am = BigUint::zero();
        } else if jn == j0 {
            // Sfx(K−1, j0−1) = I + Am, Sfx(K−1, j0) = I
            new_i = &ub * (&big_i + &am) + &vb * &big_i;
            // A(K,j) = A(K−1,j)·K·v/(K−j)
            new_a0 = exact_div(&a0 * k, k - j0 as u64) * &vb;
            new_am = if j0 == 0 {
                BigUint::zero()
            } else {
                exact_div(&am * k, k - j0 as u64 + 1) * &vb
            };
        } else {
            // threshold moved up: Sfx(K−1, j0) = I, Sfx(K−1, j0+1) = I − A0
            new_i = &ub * &big_i + &vb * (&big_i - &a0);
            // A(K, j0+1) = A(K−1, j0)·K·u/(j0+1)
            new_a0 = exact_div(&a0 * k, jn as u64) * &ub;
            // A(K, j0) = A(K−1, j0)·K·v/(K−j0)
            new_am = exact_div(&a0 * k, k - j0 as u64) * &vb;
        }
        big_i = new_i;
        a0 = new_a0;
        am = new_am;
        j0 = jn;
        rowsum *= &uv;

        // C(T,K) and z^{T−K}
        binom *= t64 - k + 1;
        binom = exact_div(binom, k);
        zpow /= &zb;

        if !big_i.is_zero() {
            total += &binom * &zpow * &big_i;
        }
    }

    ratio(total, pow_u128(w, t))
}

fn exact_div(x: BigUint, d: u64) -> BigUint {
    debug_assert!((&x % d).is_zero(), "inexact division by {d}");
    x / d
}

/// Reference implementation: full convolution of the round distribution,
/// kept as the independent oracle for the fast path.
pub fn convolution_tail_reference(u: u128, v: u128, z: u128, t: u32, theta: i128) -> BigRational {
    let w = u + v + z;
    assert!(w > 0);
    let size = 2 * t as usize + 1;
    let offset = t as i128;
    let mut g = vec![BigUint::zero(); size];
    g[offset as usize] = BigUint::one();
    let (ub, vb, zb) = (BigUint::from(u), BigUint::from(v), BigUint::from(z));
    for round in 0..t {
        let mut next = vec![BigUint::zero(); size];
        let lo = (offset - i128::from(round)) as usize;
        let hi = (offset + i128::from(round)) as usize;
        for d in lo..=hi {
            if g[d].is_zero() {
                continue;
            }
            if !ub.is_zero() {
                next[d + 1] += &g[d] * &ub;
            }
            if !zb.is_zero() {
                next[d] += &g[d] * &zb;
            }
            if !vb.is_zero() {
                next[d - 1] += &g[d] * &vb;
            }
        }
        g = next;
    }
    let mut total = BigUint::zero();
    for d in 0..size {
        if d as i128 - offset >= theta {
            total += std::mem::take(&mut g[d]);
        }
    }
    ratio(total, pow_u128(w, t))
}

/// Exact acceptance probability of a proof: the trinomial tail of the
/// verifier's round sum at the instance's integer acceptance threshold.
pub fn acceptance_probability_exact(spec: &VerifierSpec, y: &poly_core::Assignment) -> Result<BigRational> {
    if spec.repetitions() > EXACT_ORACLE_LIMIT {
        return Err(VerifierError::RepetitionsTooLarge(
            spec.repetitions(),
            EXACT_ORACLE_LIMIT,
        ));
    }
    let (u, v) = spec.activation(y)?;
    let z = spec.total_weight() - u - v;
    Ok(trinomial_tail(u, v, z, spec.repetitions(), spec.sum_threshold()))
}
