//! Literal nested evaluation of the three-round value
//! max_{ρ₁} min_{σ₁} max_{ρ₂ ∈ S(ρ₁)} Tr(R(ρ₂⊗σ₁)):
//! the outer maximization walks a deterministic low-discrepancy net over
//! the first-round state space, the two inner quantifiers are evaluated
//! exactly (the σ-player through its conic dual, the extension player as a
//! marginal-constrained semidefinite program), and a consistency
//! fixed-point refinement polishes the best net point. The result is a
//! certified lower bound that tightens with net resolution.

use num_complex::Complex64;

use crate::error::{Result, SaddleError};
use crate::linalg::{partial_trace_second, pure_state_from_coords, CMat, Halton};
use crate::ree::ree_upper;
use crate::solve::{solve_saddle_order_full, SideSdp};
use crate::types::{DensityMatrix, Observable};

#[derive(Clone, Debug)]
pub struct NestedOutcome {
    /// Lower bound on the three-round value.
    pub value: f64,
    pub best_parent: DensityMatrix,
    pub best_extension: DensityMatrix,
    pub net_points: u32,
    pub refinements: u32,
}

/// Entanglement bound handling for the extension set S(ρ₁).
fn extension_side(
    dim_a1: usize,
    dim_a2: usize,
    parent: &DensityMatrix,
    ent_bound: Option<f64>,
) -> Result<(SideSdp, bool)> {
    let max_ent = (dim_a1.min(dim_a2) as f64).ln();
    let mut side = SideSdp {
        dim: dim_a1 * dim_a2,
        ppt: None,
        parent: parent.entries().clone(),
        split: (dim_a1, dim_a2),
    };
    let needs_ree_check = match ent_bound {
        None => false,
        Some(b) if b >= max_ent - 1e-12 => false,
        Some(b) if b <= 0.0 => {
            side.ppt = Some((dim_a1, dim_a2));
            false
        }
        Some(_) => {
            // intermediate bound: solve separably-constrained (always
            // feasible) and additionally try the unconstrained optimum,
            // keeping it only when the REE certificate admits it
            side.ppt = Some((dim_a1, dim_a2));
            true
        }
    };
    Ok((side, needs_ree_check))
}

/// Evaluates the inner two quantifiers at a fixed first-round state:
/// value(ρ₁) = max_{ρ₂ ∈ S(ρ₁)} min_{σ₁} Tr(R(ρ₂⊗σ₁)), equal to the
/// stated min-max order because S(ρ₁) is convex and compact.
fn evaluate_parent(
    r: &CMat,
    dim_a1: usize,
    dim_a2: usize,
    dim_b: usize,
    parent: &DensityMatrix,
    ent_bound: Option<f64>,
) -> Result<(f64, CMat, CMat)> {
    let (side, needs_ree_check) = extension_side(dim_a1, dim_a2, parent, ent_bound)?;
    let free_b = SideSdp::free(dim_b);
    let sol = solve_saddle_order_full(r, &side, &free_b, true)?;
    let (mut value, mut ext, dual) = (sol.value, sol.outer_state, sol.parent_dual);
    if needs_ree_check {
        // try to do better than the separable extension while staying
        // certified feasible
        let unconstrained = SideSdp { ppt: None, ..side };
        let full = solve_saddle_order_full(r, &unconstrained, &free_b, true)?;
        if full.value > value {
            let (cand, _) = DensityMatrix::project(&full.outer_state);
            if ree_upper(&cand, dim_a1, dim_a2).value <= ent_bound.unwrap() {
                value = full.value;
                ext = full.outer_state;
            }
        }
    }
    Ok((value, ext, dual))
}

/// Net + refinement evaluation of the nested three-round form.
pub fn solve_nested_level3(
    r: &Observable,
    dim_a1: usize,
    dim_a2: usize,
    dim_b: usize,
    ent_bound: Option<f64>,
    net_resolution: usize,
) -> Result<NestedOutcome> {
    if r.dim() != dim_a1 * dim_a2 * dim_b {
        return Err(SaddleError::DimensionMismatch(format!(
            "observable dimension {} ≠ {dim_a1}·{dim_a2}·{dim_b}",
            r.dim()
        )));
    }
    if net_resolution == 0 || net_resolution > 100_000 {
        return Err(SaddleError::BudgetExceeded(format!(
            "net resolution {net_resolution}"
        )));
    }
    let rm = r.entries();

    // deterministic net over D(A1): low-discrepancy pure states mixed
    // toward the maximally mixed state by one extra coordinate
    let coords = if dim_a1 == 1 { 1 } else { 2 * dim_a1 - 2 };
    let mut halton = Halton::new((coords + 1).clamp(1, 12), 0);
    let mut best: Option<(f64, DensityMatrix, CMat)> = None;
    let mixed = DensityMatrix::maximally_mixed(dim_a1);
    for point in 0..net_resolution {
        let parent = if point == 0 {
            mixed.clone()
        } else {
            let p = halton.next_point();
            let psi = pure_state_from_coords(dim_a1, &p[..coords]);
            let lambda = p[coords];
            let m = crate::linalg::projector(&psi) * Complex64::new(1.0 - lambda, 0.0)
                + mixed.entries() * Complex64::new(lambda, 0.0);
            DensityMatrix::project(&m).0
        };
        let (value, ext, _) = evaluate_parent(rm, dim_a1, dim_a2, dim_b, &parent, ent_bound)?;
        if best.as_ref().is_none_or(|(bv, _, _)| value > *bv) {
            best = Some((value, parent, ext));
        }
    }
    let (mut value, mut parent, mut ext) = best.unwrap();

    // consistency fixed point: replacing the parent by the optimizer's own
    // marginal keeps the extension feasible, so the value never decreases
    let mut refinements = 0;
    for _ in 0..30 {
        let marginal = partial_trace_second(&ext, dim_a1, dim_a2);
        let (next_parent, _) = DensityMatrix::project(&marginal);
        let (v, e, _) = evaluate_parent(rm, dim_a1, dim_a2, dim_b, &next_parent, ent_bound)?;
        refinements += 1;
        if v > value + 1e-10 {
            value = v;
            parent = next_parent;
            ext = e;
        } else {
            break;
        }
    }

    // supergradient polish on the first-round state: the marginal-row
    // multipliers give an ascent direction; move along the segment toward
    // its extreme state with an exact concave line search
    for _ in 0..40 {
        let (_, _, dual) = evaluate_parent(rm, dim_a1, dim_a2, dim_b, &parent, ent_bound)?;
        let mut improved = false;
        for top in [true, false] {
            let direction = crate::linalg::projector(&crate::products::extreme_eigvec(&dual, top));
            let eval_at = |t: f64| -> Result<f64> {
                let cand = parent.entries() * Complex64::new(1.0 - t, 0.0)
                    + &direction * Complex64::new(t, 0.0);
                let (cand_state, _) = DensityMatrix::project(&cand);
                Ok(evaluate_parent(rm, dim_a1, dim_a2, dim_b, &cand_state, ent_bound)?.0)
            };
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..10 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if eval_at(m1)? >= eval_at(m2)? {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let t = 0.5 * (lo + hi);
            if t > 1e-9 {
                let cand = parent.entries() * Complex64::new(1.0 - t, 0.0)
                    + &direction * Complex64::new(t, 0.0);
                let (cand_state, _) = DensityMatrix::project(&cand);
                let (v, e, _) =
                    evaluate_parent(rm, dim_a1, dim_a2, dim_b, &cand_state, ent_bound)?;
                refinements += 1;
                if v > value + 1e-10 {
                    value = v;
                    parent = cand_state;
                    ext = e;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let (best_extension, _) = DensityMatrix::project(&ext);
    Ok(NestedOutcome {
        value,
        best_parent: parent,
        best_extension,
        net_points: net_resolution as u32,
        refinements,
    })
}
