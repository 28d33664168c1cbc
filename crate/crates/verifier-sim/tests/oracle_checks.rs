//! Monte-Carlo runs against the exact oracle, and the concentration
//! guarantee the repetition count is meant to buy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use poly_core::{Assignment, MtpInstance, MultilinearPoly, Rat};
use verifier_sim::{acceptance_probability_exact, build_verifier, run_verifier};

fn mixed_sign_spec() -> (MtpInstance, verifier_sim::VerifierSpec) {
    // P = (2x₁ + x₂ − x₁x₂)/4, values {0, 1/4, 1/2}: mixed signs, B = 1
    let p = MultilinearPoly::new(2, 2, 2, vec![(vec![1], 2), (vec![2], 1), (vec![1, 2], -1)])
        .unwrap();
    let inst = MtpInstance::new(p, Rat::new(1, 4), Rat::new(1, 4)).unwrap();
    let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
    (inst, spec)
}

#[test]
fn monte_carlo_matches_exact_oracle() {
    let (_inst, spec) = mixed_sign_spec();
    let y = Assignment::new(vec![true, true]); // P = 1/2 > a: mixed rounds
    let exact = acceptance_probability_exact(&spec, &y)
        .unwrap()
        .to_f64()
        .unwrap();
    let trials = 20_000u64;
    let mut hits = 0u64;
    for seed in 0..trials {
        if run_verifier(&spec, &y, seed).unwrap().accepted {
            hits += 1;
        }
    }
    let rate = hits as f64 / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt().max(1e-9);
    assert!(
        (rate - exact).abs() <= 3.0 * sigma,
        "rate {rate} vs exact {exact} (sigma {sigma})"
    );
}

/// With T ≥ 2·(B/δ)²·ln(2/δ_fail), any proof with P(y) ≥ a + δ accepts
/// with probability ≥ 1 − δ_fail and any proof with P(y) ≤ a − δ accepts
/// with probability ≤ δ_fail. (The margin is strict: at P(y) = a exactly
/// the round sum straddles its own mean and no repetition count can push
/// the acceptance probability toward 1.)
#[test]
fn hoeffding_consistency_with_strict_margin() {
    // P = (x₁+x₂)/2, a = 1/2, δ = 1/2, B = 1
    let p = MultilinearPoly::new(2, 1, 1, vec![(vec![1], 1), (vec![2], 1)]).unwrap();
    let inst = MtpInstance::new(p, Rat::new(1, 2), Rat::new(1, 2)).unwrap();
    let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
    // B/δ = 2 → T = ⌈2·4·ln 6⌉ = 15
    let t_strong = (2.0f64 * 4.0 * 6.0f64.ln()).ceil() as u32;
    let spec = spec.with_repetitions(t_strong);

    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));

    // P(1,1) = 1 = a + δ
    let top = acceptance_probability_exact(&spec, &Assignment::new(vec![true, true])).unwrap();
    assert!(top >= two_thirds, "acceptance at a+δ was {top}");
    // P(0,0) = 0 = a − δ
    let bottom =
        acceptance_probability_exact(&spec, &Assignment::new(vec![false, false])).unwrap();
    assert!(bottom <= third, "acceptance at a−δ was {bottom}");
}

/// Deterministic extremes from the round structure itself.
#[test]
fn extreme_proofs_are_deterministic() {
    let p = MultilinearPoly::new(1, 1, 0, vec![(vec![1], 1)]).unwrap();
    let inst = MtpInstance::new(p, Rat::new(1, 1), Rat::new(1, 1)).unwrap();
    let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
    let one = acceptance_probability_exact(&spec, &Assignment::new(vec![true])).unwrap();
    assert_eq!(one, BigRational::new(BigInt::from(1), BigInt::from(1)));
    let zero = acceptance_probability_exact(&spec, &Assignment::new(vec![false])).unwrap();
    assert_eq!(zero, BigRational::new(BigInt::from(0), BigInt::from(1)));
}

/// The oracle applied to an arithmetized formula: the unique witness of
/// (x₁)∧(x₂)∧(x₁⊕x₂=0 chain) accepts with certainty, everything else
/// stays below 1/3.
#[test]
fn arithmetized_formula_contract() {
    use cnf_compiler::{CnfFormula, Lit};
    let mut f = CnfFormula::with_originals(2);
    f.add_clause(vec![Lit::positive(1)]);
    f.add_clause(vec![Lit::positive(2)]);
    f.add_clause(vec![Lit::negative(1), Lit::positive(2)]);
    f.add_clause(vec![Lit::positive(1), Lit::negative(2)]);
    let inst = clause_poly::cnf_to_mtp(&f, 3).unwrap();
    let spec = build_verifier(&inst, Rat::new(1, 3)).unwrap();
    let report = verifier_sim::check_pcp_contract(&spec, &inst, None).unwrap();
    assert_eq!(report.verdict, verifier_sim::ContractVerdict::Holds);
    assert_eq!(report.high_count, 1);
    // fast certificate agrees
    let witness = Assignment::new(vec![true, true]);
    assert!(verifier_sim::unique_grid_certificate(&spec, &witness).unwrap());
}
