//! Monte-Carlo execution of the verifier: cumulative-weight monomial
//! sampling, the deterministic Hadamard-test outcome per sampled monomial,
//! and the repetition/threshold loop.

use num_bigint::BigInt;
use num_rational::BigRational;
use poly_core::Assignment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, VerifierError};
use crate::spec::VerifierSpec;

#[derive(Copy, Clone, Debug)]
pub struct RoundOutcome {
    /// σ_j·Π_{i∈S_j} y_i ∈ {−1, 0, +1}.
    pub value: i8,
    pub monomial_index: usize,
    /// Proof bits read this round (≤ the spec's query bound).
    pub queries: u32,
}

/// One verifier round: draws r uniformly over the integer weight grid
/// (an exact realization of the "uniform real in [0,B)" draw, since every
/// cumulative boundary is on the grid), locates the monomial by cumulative
/// search, reads only its variables, and returns the signed product.
pub fn sample_round(
    spec: &VerifierSpec,
    y: &Assignment,
    rng: &mut impl Rng,
) -> Result<RoundOutcome> {
    if y.len() != spec.proof_len() as usize {
        return Err(VerifierError::LengthMismatch {
            expected: spec.proof_len(),
            got: y.len(),
        });
    }
    let r: u128 = rng.random_range(0..spec.total_weight());
    let idx = spec.cumulative().partition_point(|&c| c <= r);
    let m = &spec.monomials()[idx];
    debug_assert!(m.vars.len() as u32 <= spec.query_bound());
    let product = m.vars.iter().all(|&v| y.get(v));
    let value = match (product, m.positive) {
        (false, _) => 0,
        (true, true) => 1,
        (true, false) => -1,
    };
    Ok(RoundOutcome {
        value,
        monomial_index: idx,
        queries: m.vars.len() as u32,
    })
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub accepted: bool,
    pub round_sum: i64,
    pub rounds: u32,
    /// P̂ = (B/T)·Σ v_t as an exact rational.
    pub estimate: BigRational,
    pub max_queries_per_round: u32,
}

/// Runs T rounds deterministically from the seed and accepts iff
/// P̂ ≥ a (ties accept).
pub fn run_verifier(spec: &VerifierSpec, y: &Assignment, seed: u64) -> Result<RunReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = spec.repetitions();
    let mut sum: i64 = 0;
    let mut max_queries = 0;
    for _ in 0..t {
        let round = sample_round(spec, y, &mut rng)?;
        sum += i64::from(round.value);
        max_queries = max_queries.max(round.queries);
    }
    let accepted = i128::from(sum) >= spec.sum_threshold();
    let estimate = BigRational::new(
        BigInt::from(sum) * BigInt::from(spec.total_weight()),
        BigInt::from(spec.weight_den()) * BigInt::from(t),
    );
    Ok(RunReport {
        accepted,
        round_sum: sum,
        rounds: t,
        estimate,
        max_queries_per_round: max_queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::build_verifier;
    use num_traits::Zero;
    use poly_core::{MtpInstance, MultilinearPoly, Rat};

    fn spec_for(terms: Vec<(Vec<u32>, i64)>, n: u32, scale: u32, a: Rat, gap: Rat) -> VerifierSpec {
        let p = MultilinearPoly::new(n, n, scale, terms).unwrap();
        let inst = MtpInstance::new(p, a, gap).unwrap();
        build_verifier(&inst, Rat::new(1, 3)).unwrap()
    }

    #[test]
    fn satisfied_single_monomial_always_plus_one() {
        let spec = spec_for(vec![(vec![1, 2], 1)], 2, 0, Rat::new(1, 1), Rat::new(1, 1));
        let y = Assignment::new(vec![true, true]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert_eq!(sample_round(&spec, &y, &mut rng).unwrap().value, 1);
        }
    }

    #[test]
    fn missing_factor_gives_zero() {
        let spec = spec_for(vec![(vec![1, 2], 1)], 2, 0, Rat::new(1, 1), Rat::new(1, 1));
        let y = Assignment::new(vec![true, false]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert_eq!(sample_round(&spec, &y, &mut rng).unwrap().value, 0);
        }
    }

    /// E[B·v] over the exact sampling law equals P(y), for every y.
    #[test]
    fn sampling_law_is_unbiased() {
        let terms = vec![(vec![1], 2), (vec![2], 1), (vec![1, 2], -1)];
        let p = MultilinearPoly::new(2, 2, 2, terms).unwrap();
        let inst = MtpInstance::new(p.clone(), Rat::new(1, 4), Rat::new(1, 4)).unwrap();
        let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
        for index in 0..4u64 {
            let y = Assignment::from_index(index, 2);
            let (u, v) = spec.activation(&y).unwrap();
            // E[B·v] = (u − v)/den
            let expect = p.evaluate(&y).unwrap();
            assert_eq!(u as i128 - v as i128, expect);
        }
    }

    #[test]
    fn accept_and_reject_are_deterministic_at_the_extremes() {
        let spec = spec_for(vec![(vec![1], 1)], 1, 0, Rat::new(1, 1), Rat::new(1, 1));
        for seed in 0..20 {
            let yes = run_verifier(&spec, &Assignment::new(vec![true]), seed).unwrap();
            assert!(yes.accepted);
            assert!(yes.estimate == BigRational::new(1.into(), 1.into()));
            let no = run_verifier(&spec, &Assignment::new(vec![false]), seed).unwrap();
            assert!(!no.accepted);
            assert!(no.estimate.is_zero());
        }
    }

    #[test]
    fn query_accounting_stays_within_bound() {
        let spec = spec_for(
            vec![(vec![1, 2, 3], 1), (vec![1], 1)],
            3,
            1,
            Rat::new(1, 2),
            Rat::new(1, 2),
        );
        let y = Assignment::new(vec![true, true, false]);
        let report = run_verifier(&spec, &y, 3).unwrap();
        assert!(report.max_queries_per_round <= spec.query_bound());
        assert_eq!(spec.query_bound(), 3);
    }

    #[test]
    fn same_seed_same_run() {
        let spec = spec_for(
            vec![(vec![1], 1), (vec![2], 1), (vec![1, 2], -1)],
            2,
            1,
            Rat::new(1, 2),
            Rat::new(1, 2),
        );
        let y = Assignment::new(vec![true, true]);
        let a = run_verifier(&spec, &y, 42).unwrap();
        let b = run_verifier(&spec, &y, 42).unwrap();
        assert_eq!(a.round_sum, b.round_sum);
        assert_eq!(a.accepted, b.accepted);
    }
}
