//! Saddle-point solver checks: order swaps, reduced sets, nested
//! evaluation, and collapse structure, on small dimensions.

use num_complex::Complex64;
use saddle_solver::{
    check_collapse_structure, kron, projector, random_observable, reduced_program,
    solve_level2, solve_nested_level3, solve_reduced, CMat, CVec, CertificateKind,
    CollapseVerdict, DensityMatrix, FeasibleSetSpec, Observable,
};

fn basis_projector(dim: usize, idx: usize) -> CMat {
    let mut v = CVec::zeros(dim);
    v[idx] = Complex64::new(1.0, 0.0);
    projector(&v)
}

#[test]
fn identity_observable_has_value_one() {
    let r = Observable::identity(4);
    let res = solve_level2(&r, 2, 2).unwrap();
    assert!((res.value_lower - 1.0).abs() < 1e-7, "{}", res.value_lower);
    assert!((res.value_upper - 1.0).abs() < 1e-7);
}

#[test]
fn projector_observable_is_fully_avoidable() {
    // R = |00⟩⟨00| on 2⊗2: the min player dodges with σ = |1⟩⟨1|
    let r = Observable::new(kron(&basis_projector(2, 0), &basis_projector(2, 0))).unwrap();
    let res = solve_level2(&r, 2, 2).unwrap();
    assert!(res.value_lower.abs() < 1e-7, "{}", res.value_lower);
    assert!(res.value_upper.abs() < 1e-7);
}

#[test]
fn sion_swap_on_random_observables() {
    for seed in 0..12 {
        let r = random_observable(4, seed);
        let res = solve_level2(&r, 2, 2).unwrap();
        assert!(
            (res.value_lower - res.value_upper).abs() <= 1e-6,
            "seed {seed}: {} vs {}",
            res.value_lower,
            res.value_upper
        );
        assert!(res.bracket_valid());
        // returned optimizers are genuine states
        assert!(res.rho.is_some() && res.sigma.is_some());
    }
    // one 4⊗4 spot check
    let r = random_observable(16, 99);
    let res = solve_level2(&r, 4, 4).unwrap();
    assert!((res.value_lower - res.value_upper).abs() <= 1e-6);
}

#[test]
fn full_sets_match_level2() {
    let r = random_observable(4, 5);
    let direct = solve_level2(&r, 2, 2).unwrap();
    let reduced = solve_reduced(
        &r,
        &FeasibleSetSpec::full(vec![2]),
        &FeasibleSetSpec::full(vec![2]),
    )
    .unwrap();
    assert!((direct.value_lower - reduced.value_lower).abs() < 1e-6);
    assert_eq!(reduced.certificate, CertificateKind::ExactSdp);
}

#[test]
fn non_binding_bound_equals_full() {
    // dims (2,2) per side, bound ln 2 is the maximum possible
    let r = random_observable(16, 21);
    let full = solve_reduced(
        &r,
        &FeasibleSetSpec::full(vec![2, 2]),
        &FeasibleSetSpec::full(vec![2, 2]),
    )
    .unwrap();
    let bounded = solve_reduced(
        &r,
        &FeasibleSetSpec::ent_bounded(vec![2, 2], 2.0f64.ln()),
        &FeasibleSetSpec::ent_bounded(vec![2, 2], 2.0f64.ln()),
    )
    .unwrap();
    assert_eq!(bounded.certificate, CertificateKind::ExactSdp);
    assert!(
        (full.value_lower - bounded.value_lower).abs() < 1e-6,
        "{} vs {}",
        full.value_lower,
        bounded.value_lower
    );
}

#[test]
fn separable_max_player_brackets_close_at_two_qubits() {
    for seed in [3u64, 17, 40] {
        let r = random_observable(8, seed);
        let res = solve_reduced(
            &r,
            &FeasibleSetSpec::separable(vec![2, 2]),
            &FeasibleSetSpec::full(vec![2]),
        )
        .unwrap();
        assert!(res.bracket_valid());
        assert_eq!(res.certificate, CertificateKind::PptRelaxation);
        assert!(
            res.value_upper - res.value_lower <= 1e-3,
            "seed {seed}: bracket [{}, {}]",
            res.value_lower,
            res.value_upper
        );
    }
}

#[test]
fn separable_min_player_brackets_close_at_two_qubits() {
    for seed in [8u64, 23] {
        let r = random_observable(8, seed);
        let res = solve_reduced(
            &r,
            &FeasibleSetSpec::full(vec![2]),
            &FeasibleSetSpec::separable(vec![2, 2]),
        )
        .unwrap();
        assert!(res.bracket_valid());
        assert!(
            res.value_upper - res.value_lower <= 1e-3,
            "seed {seed}: bracket [{}, {}]",
            res.value_lower,
            res.value_upper
        );
    }
}

#[test]
fn binding_bound_brackets_are_ordered_and_monotone() {
    let r = random_observable(8, 31);
    let set_b = FeasibleSetSpec::full(vec![2]);
    let mut lowers = Vec::new();
    for b in [0.05, 0.2, 0.5] {
        let res = solve_reduced(&r, &FeasibleSetSpec::ent_bounded(vec![2, 2], b), &set_b).unwrap();
        assert!(res.bracket_valid());
        assert_eq!(res.certificate, CertificateKind::SeesawBound);
        lowers.push(res.value_lower);
    }
    // larger feasible sets cannot shrink the certified lower bound much
    assert!(lowers[0] <= lowers[1] + 1e-7);
    assert!(lowers[1] <= lowers[2] + 1e-7);
}

#[test]
fn consistent_extension_constraint_is_enforced() {
    use saddle_solver::{partial_trace_second, FeasibleKind};
    let r = random_observable(8, 13);
    let parent = DensityMatrix::maximally_mixed(2);
    let set_a = FeasibleSetSpec {
        registers: vec![2, 2],
        kind: FeasibleKind::Consistent {
            parent: parent.clone(),
            ent_bound: None,
        },
    };
    let res = solve_reduced(&r, &set_a, &FeasibleSetSpec::full(vec![2])).unwrap();
    let rho = res.rho.unwrap();
    let marginal = partial_trace_second(rho.entries(), 2, 2);
    assert!(
        (marginal - parent.entries()).norm() < 1e-6,
        "marginal deviates"
    );
}

#[test]
fn nested_identity_observable_reaches_one() {
    let r = Observable::identity(8);
    let out = solve_nested_level3(&r, 2, 2, 2, None, 16).unwrap();
    assert!((out.value - 1.0).abs() < 1e-6, "{}", out.value);
}

#[test]
fn nested_agrees_with_reduced_when_unbounded() {
    for seed in [2u64, 19] {
        let r = random_observable(8, seed);
        let reduced = solve_reduced(
            &r,
            &FeasibleSetSpec::full(vec![2, 2]),
            &FeasibleSetSpec::full(vec![2]),
        )
        .unwrap();
        let nested = solve_nested_level3(&r, 2, 2, 2, None, 64).unwrap();
        // the nested walk is a lower bound that the refinement should close
        assert!(nested.value <= reduced.value_upper + 1e-7);
        assert!(
            (nested.value - reduced.value_lower).abs() <= 2e-3,
            "seed {seed}: nested {} vs reduced {}",
            nested.value,
            reduced.value_lower
        );
    }
}

#[test]
fn nested_zero_bound_matches_separable_reduced() {
    let r = random_observable(8, 77);
    let reduced = solve_reduced(
        &r,
        &FeasibleSetSpec::separable(vec![2, 2]),
        &FeasibleSetSpec::full(vec![2]),
    )
    .unwrap();
    let nested = solve_nested_level3(&r, 2, 2, 2, Some(0.0), 64).unwrap();
    // at two qubits the PPT upper bracket is the exact separable value
    assert!(
        (nested.value - reduced.value_upper).abs() <= 2e-3,
        "nested {} vs reduced PPT {}",
        nested.value,
        reduced.value_upper
    );
}

#[test]
fn collapse_structure_levels_five_and_six() {
    let obs: Vec<Observable> = (0..2).map(|s| random_observable(16, 60 + s)).collect();
    for level in [5u32, 6] {
        let report = check_collapse_structure(
            level,
            2,
            &[2.0f64.ln(); 4],
            &[2.0f64.ln(); 4],
            &obs,
            1e-6,
        )
        .unwrap();
        assert_eq!(report.verdict, CollapseVerdict::Equal, "level {level}");
    }
}

#[test]
fn collapse_not_applicable_for_varying_bounds() {
    let report =
        check_collapse_structure(5, 2, &[0.1, 0.2, 0.3, 0.4], &[0.1; 4], &[], 1e-6).unwrap();
    assert!(matches!(report.verdict, CollapseVerdict::NotApplicable(_)));
}

#[test]
fn reduced_register_counts_follow_the_formulas() {
    // level = i+2; k = l = i/2 when even, k = (i+1)/2 and l = k−1 when odd
    assert_eq!(saddle_solver::reduced_register_counts(3).unwrap(), (1, 0));
    assert_eq!(saddle_solver::reduced_register_counts(4).unwrap(), (1, 1));
    assert_eq!(saddle_solver::reduced_register_counts(5).unwrap(), (2, 1));
    assert_eq!(saddle_solver::reduced_register_counts(6).unwrap(), (2, 2));
    assert_eq!(saddle_solver::reduced_register_counts(8).unwrap(), (3, 3));
    let p5 = reduced_program(5, 2, 0.3, 0.3).unwrap();
    assert_eq!(p5.set_a.registers, vec![2, 2, 2]);
    assert_eq!(p5.set_b.registers, vec![2, 2]);
}
