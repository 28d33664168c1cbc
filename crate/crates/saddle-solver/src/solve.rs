//! Bilinear saddle-point solvers over constrained state sets.
//!
//! The inner player is always folded away through conic duality. For an
//! inner minimization over {σ ⪰ 0, Tr_last σ = parent, σ^{T₂} ⪰ 0?}, the
//! dual reads max Tr(Λ·parent) s.t. M(ρ) − Λ⊗I − Y^{T₂} ⪰ 0, Y ⪰ 0, so the
//! whole saddle becomes one semidefinite program in (ρ, Λ, Y). The plain
//! unit-trace inner set is the special case parent = [1] on a trivial
//! register, whose dual variable is the familiar `t` in
//! max t s.t. M(ρ) ⪰ tI. Separable sets are not semidefinite-representable;
//! they get bracket semantics: a PPT cone on whichever side it relaxes
//! soundly, a see-saw over explicit product decompositions on the other.

use num_complex::Complex64;

use crate::error::{Result, SaddleError};
use crate::linalg::{
    hermitian_basis, identity, kron, max_eigenvalue, min_eigenvalue, partial_trace_second,
    partial_transpose_second, payoff_on_first, payoff_on_second, projector, CMat,
};
use crate::products::{best_product, extreme_eigvec, product_candidates};
use crate::ree::ree_upper;
use crate::sdp::{scaled, HermitianSdp};
use crate::types::{
    CanonicalKind, CertificateKind, DensityMatrix, FeasibleKind, FeasibleSetSpec, Observable,
    SaddleResult,
};

/// Convex constraints on one player, all semidefinite-representable.
#[derive(Clone)]
pub(crate) struct SideSdp {
    pub dim: usize,
    /// PSD on the partial transpose across (rest, last).
    pub ppt: Option<(usize, usize)>,
    /// Tr_last(·) must equal this parent across (rest, last); the plain
    /// unit-trace constraint is parent = [1] over rest = 1.
    pub parent: CMat,
    pub split: (usize, usize),
}

impl SideSdp {
    pub(crate) fn free(dim: usize) -> Self {
        let mut parent = CMat::zeros(1, 1);
        parent[(0, 0)] = Complex64::new(1.0, 0.0);
        SideSdp {
            dim,
            ppt: None,
            parent,
            split: (1, dim),
        }
    }
}

fn trace_inner(a: &CMat, b: &CMat) -> f64 {
    (a * b).trace().re
}

/// One bilinear saddle solve with the outer player explicit and the inner
/// player dualized. `maximize` picks which side is outer:
/// true  → value = max_{ρ ∈ A} min_{σ ∈ B} Tr(R(ρ⊗σ)), outer on A
/// false → value = min_{σ ∈ B} max_{ρ ∈ A} Tr(R(ρ⊗σ)), outer on B
pub(crate) struct SaddleOrderSolution {
    pub value: f64,
    pub outer_state: CMat,
    /// Multiplier matrix of the outer player's marginal rows: the
    /// supergradient of the value in the parent (max order), or its
    /// subgradient (min order).
    pub parent_dual: CMat,
}

pub(crate) fn solve_saddle_order(
    r: &CMat,
    a: &SideSdp,
    b: &SideSdp,
    maximize: bool,
) -> Result<(f64, CMat)> {
    let sol = solve_saddle_order_full(r, a, b, maximize)?;
    Ok((sol.value, sol.outer_state))
}

pub(crate) fn solve_saddle_order_full(
    r: &CMat,
    a: &SideSdp,
    b: &SideSdp,
    maximize: bool,
) -> Result<SaddleOrderSolution> {
    let (outer, inner) = if maximize { (a, b) } else { (b, a) };
    let basis_outer = hermitian_basis(outer.dim);
    let n_outer = basis_outer.len();
    let basis_lam = hermitian_basis(inner.split.0);
    let lam_base = n_outer;
    let n_lam = basis_lam.len();
    let mut nvars = n_outer + n_lam;
    let y_base = nvars;
    if inner.ppt.is_some() {
        nvars += inner.dim * inner.dim;
    }

    let mut sdp = HermitianSdp::new(nvars);
    // objective ±Tr(Λ parent); the solver minimizes
    for (j, hj) in basis_lam.iter().enumerate() {
        let w = trace_inner(hj, &inner.parent);
        if w.abs() > 1e-14 {
            sdp.objective_coeff(lam_base + j, if maximize { -w } else { w });
        }
    }

    // outer player constraints: marginal rows, PSD, optional PPT
    let basis_rest = hermitian_basis(outer.split.0);
    for hj in &basis_rest {
        let coeffs: Vec<(usize, f64)> = basis_outer
            .iter()
            .enumerate()
            .map(|(k, hk)| {
                (
                    k,
                    trace_inner(
                        hj,
                        &partial_trace_second(hk, outer.split.0, outer.split.1),
                    ),
                )
            })
            .filter(|(_, v)| v.abs() > 1e-14)
            .collect();
        sdp.equality(coeffs, trace_inner(hj, &outer.parent));
    }
    sdp.psd_block(
        &CMat::zeros(outer.dim, outer.dim),
        basis_outer.iter().cloned().enumerate().collect(),
    );
    if let Some((rest, last)) = outer.ppt {
        sdp.psd_block(
            &CMat::zeros(outer.dim, outer.dim),
            basis_outer
                .iter()
                .enumerate()
                .map(|(k, h)| (k, partial_transpose_second(h, rest, last)))
                .collect(),
        );
    }

    // dualized inner player:
    //   maximize: M(ρ) − Λ⊗I − Y^{T} ⪰ 0
    //   minimize: Λ⊗I − N(σ) − Y^{T} ⪰ 0
    let id_last = identity(inner.split.1);
    let mut factors: Vec<(usize, CMat)> = Vec::new();
    for (k, h) in basis_outer.iter().enumerate() {
        let payoff = if maximize {
            payoff_on_second(r, h, outer.dim, inner.dim)
        } else {
            payoff_on_first(r, h, inner.dim, outer.dim)
        };
        factors.push((k, if maximize { payoff } else { scaled(&payoff, -1.0) }));
    }
    for (j, hj) in basis_lam.iter().enumerate() {
        let lifted = kron(hj, &id_last);
        factors.push((
            lam_base + j,
            if maximize {
                scaled(&lifted, -1.0)
            } else {
                lifted
            },
        ));
    }
    if let Some((rest, last)) = inner.ppt {
        let basis_inner = hermitian_basis(inner.dim);
        for (k, f) in basis_inner.iter().enumerate() {
            factors.push((
                y_base + k,
                scaled(&partial_transpose_second(f, rest, last), -1.0),
            ));
        }
        sdp.psd_block(
            &CMat::zeros(inner.dim, inner.dim),
            basis_inner
                .iter()
                .enumerate()
                .map(|(k, f)| (y_base + k, f.clone()))
                .collect(),
        );
    }
    sdp.psd_block(&CMat::zeros(inner.dim, inner.dim), factors);

    let sol = sdp.solve()?;
    let value = if maximize {
        -sol.objective
    } else {
        sol.objective
    };
    if !sol.status_good {
        return Err(SaddleError::SolverFailure(
            "interior-point solve stalled before reaching tolerance".into(),
        ));
    }
    let outer_state = crate::linalg::from_basis_coords(outer.dim, &sol.x[..n_outer]);
    // the equality rows are exactly the outer marginal rows, in basis order
    let mut parent_dual = CMat::zeros(outer.split.0, outer.split.0);
    for (hj, &z) in hermitian_basis(outer.split.0).iter().zip(&sol.eq_duals) {
        parent_dual += hj * Complex64::new(z, 0.0);
    }
    Ok(SaddleOrderSolution {
        value,
        outer_state,
        parent_dual,
    })
}

/// v* = max_ρ min_σ Tr(R(ρ⊗σ)) over full state sets, solved in both
/// quantifier orders (lower = max-min, upper = min-max).
pub fn solve_level2(r: &Observable, dim_a: usize, dim_b: usize) -> Result<SaddleResult> {
    if r.dim() != dim_a * dim_b {
        return Err(SaddleError::DimensionMismatch(format!(
            "observable dimension {} ≠ {dim_a}·{dim_b}",
            r.dim()
        )));
    }
    let a = SideSdp::free(dim_a);
    let b = SideSdp::free(dim_b);
    let (lower, rho) = solve_saddle_order(r.entries(), &a, &b, true)?;
    let (upper, sigma) = solve_saddle_order(r.entries(), &a, &b, false)?;
    let (rho, _) = DensityMatrix::project(&rho);
    let (sigma, _) = DensityMatrix::project(&sigma);
    Ok(SaddleResult {
        value_lower: lower,
        value_upper: upper,
        rho: Some(rho),
        sigma: Some(sigma),
        iterations: 1,
        certificate: CertificateKind::ExactSdp,
        converged: (lower - upper).abs() <= 1e-6,
    })
}

// ---------------------------------------------------------------------------
// see-saw machinery over explicit product decompositions
// ---------------------------------------------------------------------------

/// Weight optimization over fixed components for the outer player, with
/// the inner player dualized exactly as in the continuous solve.
fn weight_sdp(
    r: &CMat,
    components: &[CMat],
    inner: &SideSdp,
    outer_dim: usize,
    maximize: bool,
) -> Result<(f64, Vec<f64>)> {
    let n = components.len();
    let basis_lam = hermitian_basis(inner.split.0);
    let lam_base = n;
    let n_lam = basis_lam.len();
    let mut nvars = n + n_lam;
    let y_base = nvars;
    if inner.ppt.is_some() {
        nvars += inner.dim * inner.dim;
    }
    let mut sdp = HermitianSdp::new(nvars);
    for (j, hj) in basis_lam.iter().enumerate() {
        let w = trace_inner(hj, &inner.parent);
        if w.abs() > 1e-14 {
            sdp.objective_coeff(lam_base + j, if maximize { -w } else { w });
        }
    }
    sdp.equality((0..n).map(|i| (i, 1.0)).collect(), 1.0);
    for i in 0..n {
        sdp.leq(vec![(i, -1.0)], 0.0);
    }
    let id_last = identity(inner.split.1);
    let mut factors: Vec<(usize, CMat)> = Vec::new();
    for (i, p) in components.iter().enumerate() {
        let payoff = if maximize {
            payoff_on_second(r, p, outer_dim, inner.dim)
        } else {
            payoff_on_first(r, p, inner.dim, outer_dim)
        };
        factors.push((i, if maximize { payoff } else { scaled(&payoff, -1.0) }));
    }
    for (j, hj) in basis_lam.iter().enumerate() {
        let lifted = kron(hj, &id_last);
        factors.push((
            lam_base + j,
            if maximize {
                scaled(&lifted, -1.0)
            } else {
                lifted
            },
        ));
    }
    if let Some((rest, last)) = inner.ppt {
        let basis_inner = hermitian_basis(inner.dim);
        for (k, f) in basis_inner.iter().enumerate() {
            factors.push((
                y_base + k,
                scaled(&partial_transpose_second(f, rest, last), -1.0),
            ));
        }
        sdp.psd_block(
            &CMat::zeros(inner.dim, inner.dim),
            basis_inner
                .iter()
                .enumerate()
                .map(|(k, f)| (y_base + k, f.clone()))
                .collect(),
        );
    }
    sdp.psd_block(&CMat::zeros(inner.dim, inner.dim), factors);
    let sol = sdp.solve()?;
    let value = if maximize {
        -sol.objective
    } else {
        sol.objective
    };
    Ok((value, sol.x[..n].to_vec()))
}

/// Greedy product decomposition of a (near-)separable target: repeatedly
/// adds the product state most aligned with the residual, stepping the
/// running mixture by the exact 1-D least-squares amount.
fn matching_pursuit_products(
    target: &CMat,
    rest: usize,
    last: usize,
    iters: usize,
) -> Vec<CMat> {
    let mut sigma: Option<CMat> = None;
    let mut out = Vec::new();
    for _ in 0..iters {
        let residual = match &sigma {
            None => target.clone(),
            Some(s) => target - s,
        };
        let (_, a, b) = best_product(
            &crate::linalg::hermitize(&residual),
            rest,
            last,
            true,
        );
        let p = kron(&projector(&a), &projector(&b));
        out.push(p.clone());
        sigma = Some(match sigma {
            None => p,
            Some(s) => {
                let ds = &p - &s;
                let num = (ds.adjoint() * (target - &s)).trace().re;
                let den = (ds.adjoint() * &ds).trace().re.max(1e-18);
                let t = (num / den).clamp(0.0, 1.0);
                &s * Complex64::new(1.0 - t, 0.0) + &p * Complex64::new(t, 0.0)
            }
        });
        if let Some(s) = &sigma {
            if (s - target).norm() < 1e-10 {
                break;
            }
        }
    }
    out
}

fn mix(components: &[CMat], weights: &[f64]) -> CMat {
    let d = components[0].nrows();
    let mut out = CMat::zeros(d, d);
    for (c, &w) in components.iter().zip(weights) {
        if w > 1e-12 {
            out += c * Complex64::new(w, 0.0);
        }
    }
    out
}

/// See-saw over an explicit product ensemble for a separable outer player.
/// Returns a certified bound: every iterate is genuinely separable, so for
/// a max player the value bounds from below, for a min player from above.
fn seesaw_separable(
    r: &CMat,
    split: (usize, usize),
    inner: &SideSdp,
    maximize: bool,
    rounds: usize,
    hint: Option<&CMat>,
) -> Result<(f64, CMat, u32)> {
    let (rest, last) = split;
    let outer_dim = rest * last;
    let mut components: Vec<CMat> = product_candidates(rest, last, (rest * last).max(6))
        .into_iter()
        .map(|(a, b)| kron(&projector(&a), &projector(&b)))
        .collect();
    if let Some(target) = hint {
        // decompose the hint state into products by matching pursuit and
        // seed the ensemble with them (deduplicated: near-identical
        // columns destabilize the weight program)
        for p in matching_pursuit_products(target, rest, last, 32) {
            if components.iter().all(|c| (c - &p).norm() > 1e-6) {
                components.push(p);
            }
        }
    }
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut best_val = f64::NEG_INFINITY * sign;
    let mut best_state = components[0].clone();
    let mut iterations = 0;
    for round in 0..rounds {
        iterations += 1;
        let (val, weights) = match weight_sdp(r, &components, inner, outer_dim, maximize) {
            Ok(out) => out,
            // a numerically degenerate ensemble: keep the best certified
            // value found so far rather than failing the whole solve
            Err(_) if round > 0 => break,
            Err(e) => return Err(e),
        };
        if sign * val > sign * best_val || best_val.is_infinite() {
            best_val = val;
            best_state = mix(&components, &weights);
        }
        // eigenvector-guided component additions from the two most active
        // directions of the inner payoff
        let payoff = if maximize {
            payoff_on_second(r, &best_state, outer_dim, inner.dim)
        } else {
            payoff_on_first(r, &best_state, inner.dim, outer_dim)
        };
        let (_, vecs) = crate::linalg::eigh(&payoff);
        let picks = if maximize {
            [0usize, 1]
        } else {
            [inner.dim - 1, inner.dim - 2]
        };
        for &idx in &picks {
            let y = vecs.column(idx).into_owned();
            let z = if maximize {
                payoff_on_first(r, &projector(&y), outer_dim, inner.dim)
            } else {
                payoff_on_second(r, &projector(&y), inner.dim, outer_dim)
            };
            let (_, a, b) = best_product(&z, rest, last, maximize);
            let candidate = kron(&projector(&a), &projector(&b));
            if components.iter().all(|c| (c - &candidate).norm() > 1e-6) {
                components.push(candidate);
            }
        }
        if components.len() > 64 {
            break;
        }
    }
    Ok((best_val, best_state, iterations))
}

// ---------------------------------------------------------------------------
// the reduced two-round program over described feasible sets
// ---------------------------------------------------------------------------

struct SidePlan {
    /// SDP description used when this side is solved conically; for a
    /// separable side this is the PPT relaxation.
    sdp: SideSdp,
    /// The SDP description is a strict relaxation (PPT ⊋ separable).
    relaxed: bool,
    /// Binding REE bound: only bracket semantics available.
    binding: Option<f64>,
}

fn plan_side(spec: &FeasibleSetSpec) -> Result<SidePlan> {
    spec.validate()?;
    let dim = spec.total_dim();
    let split = spec.split();
    let (marginal, inner_kind) = match (&spec.kind, spec.canonical_kind()) {
        (FeasibleKind::Consistent { parent, .. }, CanonicalKind::Consistent(inner)) => {
            (Some(parent.entries().clone()), *inner)
        }
        (_, k) => (None, k),
    };
    let mut sdp = SideSdp::free(dim);
    if let Some(parent) = marginal {
        sdp.parent = parent;
        sdp.split = split;
    }
    let (relaxed, binding) = match inner_kind {
        CanonicalKind::Full => (false, None),
        CanonicalKind::Separable => {
            sdp.ppt = Some(split);
            (true, None)
        }
        CanonicalKind::EntBounded(b) => (false, Some(b)),
        CanonicalKind::Consistent(_) => unreachable!(),
    };
    Ok(SidePlan {
        sdp,
        relaxed,
        binding,
    })
}

/// Solves max_{ρ∈SA} min_{σ∈SB} Tr(R(ρ⊗σ)). Exact values where the sets
/// are semidefinite-representable, honest brackets everywhere else.
pub fn solve_reduced(
    r: &Observable,
    set_a: &FeasibleSetSpec,
    set_b: &FeasibleSetSpec,
) -> Result<SaddleResult> {
    let da = set_a.total_dim();
    let db = set_b.total_dim();
    if r.dim() != da * db {
        return Err(SaddleError::DimensionMismatch(format!(
            "observable dimension {} ≠ {da}·{db}",
            r.dim()
        )));
    }
    let plan_a = plan_side(set_a)?;
    let plan_b = plan_side(set_b)?;
    if plan_a.binding.is_some() || plan_b.binding.is_some() {
        return ent_bounded_bracket(r, set_a, set_b, &plan_a, &plan_b);
    }
    let rm = r.entries();
    let mut iterations = 1u32;

    match (plan_a.relaxed, plan_b.relaxed) {
        (false, false) => {
            let (lower, rho) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, true)?;
            let (upper, sigma) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, false)?;
            let (rho, _) = DensityMatrix::project(&rho);
            let (sigma, _) = DensityMatrix::project(&sigma);
            Ok(SaddleResult {
                value_lower: lower,
                value_upper: upper,
                rho: Some(rho),
                sigma: Some(sigma),
                iterations,
                certificate: CertificateKind::ExactSdp,
                converged: (lower - upper).abs() <= 1e-6,
            })
        }
        (true, false) => {
            // separable max player: PPT relaxation above, see-saw below,
            // the ensemble seeded with the PPT optimizer's decomposition
            let (upper, rho_ppt) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, true)?;
            let (lower, rho_sep, it) =
                seesaw_separable(rm, set_a.split(), &plan_b.sdp, true, 12, Some(&rho_ppt))?;
            iterations += it;
            let (rho, _) = DensityMatrix::project(&rho_sep);
            Ok(SaddleResult {
                value_lower: lower,
                value_upper: upper,
                rho: Some(rho),
                sigma: None,
                iterations,
                certificate: CertificateKind::PptRelaxation,
                converged: (upper - lower).abs() <= 1e-3,
            })
        }
        (false, true) => {
            // separable min player: PPT fold below, see-saw above
            let (lower, rho) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, true)?;
            let (_, sigma_ppt) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, false)?;
            let (upper, sigma_sep, it) =
                seesaw_separable(rm, set_b.split(), &plan_a.sdp, false, 12, Some(&sigma_ppt))?;
            iterations += it;
            let (rho, _) = DensityMatrix::project(&rho);
            let (sigma, _) = DensityMatrix::project(&sigma_sep);
            Ok(SaddleResult {
                value_lower: lower,
                value_upper: upper,
                rho: Some(rho),
                sigma: Some(sigma),
                iterations,
                certificate: CertificateKind::PptRelaxation,
                converged: (upper - lower).abs() <= 1e-3,
            })
        }
        (true, true) => {
            // both separable: see-saw each side against the other's PPT fold
            let (_, rho_ppt) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, true)?;
            let (_, sigma_ppt) = solve_saddle_order(rm, &plan_a.sdp, &plan_b.sdp, false)?;
            let (lower, rho_sep, it1) =
                seesaw_separable(rm, set_a.split(), &plan_b.sdp, true, 12, Some(&rho_ppt))?;
            let (upper, sigma_sep, it2) =
                seesaw_separable(rm, set_b.split(), &plan_a.sdp, false, 12, Some(&sigma_ppt))?;
            iterations += it1 + it2;
            let (rho, _) = DensityMatrix::project(&rho_sep);
            let (sigma, _) = DensityMatrix::project(&sigma_sep);
            Ok(SaddleResult {
                value_lower: lower,
                value_upper: upper,
                rho: Some(rho),
                sigma: Some(sigma),
                iterations,
                certificate: CertificateKind::PptRelaxation,
                converged: (upper - lower).abs() <= 1e-3,
            })
        }
    }
}

/// Brackets when one side carries a binding REE bound.
///
/// Max player bounded by b: the full set bounds from above; certified
/// feasible candidates (separable see-saw, plus a bisection along the
/// segment toward the full optimizer with `ree_upper` as the feasibility
/// oracle) bound from below. Min player mirrored.
fn ent_bounded_bracket(
    r: &Observable,
    set_a: &FeasibleSetSpec,
    set_b: &FeasibleSetSpec,
    plan_a: &SidePlan,
    plan_b: &SidePlan,
) -> Result<SaddleResult> {
    if plan_a.binding.is_some() && plan_b.binding.is_some() {
        return Err(SaddleError::InvalidSet(
            "binding entanglement bounds on both players are not supported together".into(),
        ));
    }
    let rm = r.entries();
    let da = set_a.total_dim();
    let db = set_b.total_dim();
    let mut iterations = 0u32;

    if let Some(bound) = plan_a.binding {
        let split_a = set_a.split();
        // upper: enlarge A to the full set (sound regardless of B's plan;
        // a separable B keeps its see-saw upper instead)
        let full_a = SideSdp {
            ppt: None,
            ..plan_a.sdp.clone()
        };
        let (upper, rho_full) = if plan_b.relaxed {
            // value ≤ min_{SepB} max_{FullA} ≤ the see-saw's certified value
            let (u, _, it) = seesaw_separable(rm, set_b.split(), &full_a, false, 10, None)?;
            iterations += it;
            let (_, state) = solve_saddle_order(rm, &full_a, &plan_b.sdp, true)?;
            (u, state)
        } else {
            let (u, _) = solve_saddle_order(rm, &full_a, &plan_b.sdp, false)?;
            let (_, state) = solve_saddle_order(rm, &full_a, &plan_b.sdp, true)?;
            (u, state)
        };
        // lower: certified-feasible ascent
        let (sep_val, rho_sep, it) =
            seesaw_separable(rm, split_a, &plan_b.sdp, true, 10, Some(&rho_full))?;
        iterations += it + 1;
        let eval = |rho: &CMat| -> Result<f64> {
            inner_value_at(rm, rho, da, &plan_b.sdp, true)
        };
        let mut best_lower = sep_val;
        let mut best_state = rho_sep;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..8 {
            iterations += 1;
            let t = 0.5 * (lo + hi);
            let cand = &best_state * Complex64::new(1.0 - t, 0.0)
                + &rho_full * Complex64::new(t, 0.0);
            let (cand_state, _) = DensityMatrix::project(&cand);
            if ree_upper(&cand_state, split_a.0, split_a.1).value <= bound {
                lo = t;
                let v = eval(cand_state.entries())?;
                if v > best_lower {
                    best_lower = v;
                    best_state = cand_state.entries().clone();
                }
            } else {
                hi = t;
            }
        }
        let (rho, _) = DensityMatrix::project(&best_state);
        return Ok(SaddleResult {
            value_lower: best_lower,
            value_upper: upper,
            rho: Some(rho),
            sigma: None,
            iterations,
            certificate: CertificateKind::SeesawBound,
            converged: false,
        });
    }

    // symmetric case: binding bound on the min player
    let bound = plan_b.binding.unwrap();
    let split_b = set_b.split();
    // lower: enlarge B to the full set
    let full_b = SideSdp {
        ppt: None,
        ..plan_b.sdp.clone()
    };
    let (lower, _) = if plan_a.relaxed {
        let (v, s, it) = seesaw_separable(rm, set_a.split(), &full_b, true, 10, None)?;
        iterations += it;
        (v, s)
    } else {
        let (v, s) = solve_saddle_order(rm, &plan_a.sdp, &full_b, true)?;
        (v, s)
    };
    // upper: certified-feasible descent on σ
    let (_, sigma_full_hint) = solve_saddle_order(rm, &plan_a.sdp, &full_b, false)?;
    let (sep_val, sigma_sep, it) =
        seesaw_separable(rm, split_b, &plan_a.sdp, false, 10, Some(&sigma_full_hint))?;
    iterations += it + 1;
    let (_, sigma_full) = solve_saddle_order(rm, &plan_a.sdp, &full_b, false)?;
    let eval = |sigma: &CMat| -> Result<f64> {
        inner_value_at(rm, sigma, db, &plan_a.sdp, false)
    };
    let mut best_upper = sep_val;
    let mut best_state = sigma_sep;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..8 {
        iterations += 1;
        let t = 0.5 * (lo + hi);
        let cand =
            &best_state * Complex64::new(1.0 - t, 0.0) + &sigma_full * Complex64::new(t, 0.0);
        let (cand_state, _) = DensityMatrix::project(&cand);
        if ree_upper(&cand_state, split_b.0, split_b.1).value <= bound {
            lo = t;
            let v = eval(cand_state.entries())?;
            if v < best_upper {
                best_upper = v;
                best_state = cand_state.entries().clone();
            }
        } else {
            hi = t;
        }
    }
    let (sigma, _) = DensityMatrix::project(&best_state);
    Ok(SaddleResult {
        value_lower: lower,
        value_upper: best_upper,
        rho: None,
        sigma: Some(sigma),
        iterations,
        certificate: CertificateKind::SeesawBound,
        converged: false,
    })
}

/// Value of the dualized inner player at a fixed outer state.
/// For `outer_is_max`: min over B's SDP set of Tr(M(ρ)σ) — certified lower
/// direction when B's set is a PPT relaxation. Mirrored otherwise.
fn inner_value_at(
    r: &CMat,
    outer_state: &CMat,
    outer_dim: usize,
    inner: &SideSdp,
    outer_is_max: bool,
) -> Result<f64> {
    if inner.ppt.is_none() && inner.split.0 == 1 {
        // plain unit-trace inner player: an eigenvalue
        let m = if outer_is_max {
            payoff_on_second(r, outer_state, outer_dim, inner.dim)
        } else {
            payoff_on_first(r, outer_state, inner.dim, outer_dim)
        };
        return Ok(if outer_is_max {
            min_eigenvalue(&m)
        } else {
            max_eigenvalue(&m)
        });
    }
    // one-component weight SDP reuses the dualized machinery
    let (v, _) = weight_sdp(
        r,
        std::slice::from_ref(outer_state),
        inner,
        outer_dim,
        outer_is_max,
    )?;
    Ok(v)
}
