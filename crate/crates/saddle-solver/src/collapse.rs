//! Level reduction bookkeeping: the two-round program a hierarchy level
//! collapses to, its canonical (visible) form, and the structural and
//! numerical equality checks between high levels and level four.

use num_complex::Complex64;

use crate::error::{Result, SaddleError};
use crate::linalg::CMat;
use crate::solve::solve_reduced;
use crate::types::{CanonicalKind, FeasibleSetSpec, Observable};

/// The reduced two-round optimization program of one hierarchy level.
#[derive(Clone, Debug)]
pub struct ProgramSpec {
    pub level: u32,
    pub set_a: FeasibleSetSpec,
    pub set_b: FeasibleSetSpec,
}

/// Register counts for the reduced form: level i+2 optimizes over
/// (k+1)-register and (l+1)-register states with k = l = i/2 when i+2 is
/// even, k = (i+1)/2 and l = k−1 when i+2 is odd.
pub fn reduced_register_counts(level: u32) -> Result<(usize, usize)> {
    if level < 3 {
        return Err(SaddleError::InvalidSet(format!(
            "level {level} has no reduced two-round form"
        )));
    }
    let i = level - 2;
    let (k, l) = if level % 2 == 0 {
        ((i / 2) as usize, (i / 2) as usize)
    } else {
        (((i + 1) / 2) as usize, ((i + 1) / 2) as usize - 1)
    };
    Ok((k, l))
}

/// Builds the reduced program for a level with constant per-round bounds.
pub fn reduced_program(level: u32, reg_dim: usize, b: f64, d: f64) -> Result<ProgramSpec> {
    let (k, l) = reduced_register_counts(level)?;
    let bound_kind = |bound: f64, regs: usize| {
        if regs == 0 {
            FeasibleSetSpec::full(vec![reg_dim])
        } else {
            FeasibleSetSpec::ent_bounded(vec![reg_dim; regs + 1], bound)
        }
    };
    Ok(ProgramSpec {
        level,
        set_a: bound_kind(b, k),
        set_b: bound_kind(d, l),
    })
}

/// Canonical visible form of a feasible set: the reachable marginals on
/// the last two registers. Appending uncorrelated prefix registers neither
/// grows nor shrinks that set (the entanglement bound is monotone under
/// partial trace of the untouched side and additive under product
/// extension), so the canonical form is register-count independent.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalSet {
    pub visible_dims: (usize, usize),
    pub kind: CanonicalKind,
}

pub fn canonical_set(spec: &FeasibleSetSpec) -> CanonicalSet {
    let last = *spec.registers.last().unwrap();
    let prev = if spec.registers.len() >= 2 {
        spec.registers[spec.registers.len() - 2]
    } else {
        1
    };
    // canonical kind relative to the visible split
    let visible = FeasibleSetSpec {
        registers: vec![prev, last],
        kind: spec.kind.clone(),
    };
    CanonicalSet {
        visible_dims: (prev, last),
        kind: visible.canonical_kind(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CollapseVerdict {
    /// Programs are structurally identical in canonical form; numerical
    /// values (when solved) agreed within tolerance.
    Equal,
    StructureMismatch(String),
    ValueMismatch { level: f64, four: f64 },
    NotApplicable(String),
}

#[derive(Clone, Debug)]
pub struct CollapseReport {
    pub verdict: CollapseVerdict,
    pub program_level: ProgramSpec,
    pub program_four: ProgramSpec,
    /// Per-observable values (level, four) when solved numerically.
    pub values: Vec<(f64, f64)>,
}

/// Embeds an observable acting on the visible (last-two-register) factors
/// of each side into the full lifted space, identity on the prefixes.
/// Index layout keeps earlier registers slower on both sides.
pub fn lift_observable(
    r: &CMat,
    prefix_a: usize,
    vis_a: usize,
    prefix_b: usize,
    vis_b: usize,
) -> CMat {
    let da = prefix_a * vis_a;
    let db = prefix_b * vis_b;
    let mut out = CMat::zeros(da * db, da * db);
    for pa in 0..prefix_a {
        for va in 0..vis_a {
            for pb in 0..prefix_b {
                for vb in 0..vis_b {
                    let row_a = pa * vis_a + va;
                    let row_b = pb * vis_b + vb;
                    for va2 in 0..vis_a {
                        for vb2 in 0..vis_b {
                            let col_a = pa * vis_a + va2;
                            let col_b = pb * vis_b + vb2;
                            out[(row_a * db + row_b, col_a * db + col_b)] +=
                                r[(va * vis_b + vb, va2 * vis_b + vb2)]
                                    * Complex64::new(1.0, 0.0);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Asserts the structural identity of the level-`level` and level-4
/// reduced programs under constant bounds, and solves both on the given
/// observables (drawn on the level-4 total dimension) for value equality.
pub fn check_collapse_structure(
    level: u32,
    reg_dim: usize,
    bounds_a: &[f64],
    bounds_b: &[f64],
    observables: &[Observable],
    tol: f64,
) -> Result<CollapseReport> {
    if level < 4 {
        return Err(SaddleError::InvalidSet(
            "collapse comparisons start at level 4".into(),
        ));
    }
    let constant = |xs: &[f64]| xs.windows(2).all(|w| (w[0] - w[1]).abs() <= 1e-12);
    if bounds_a.is_empty() || bounds_b.is_empty() || !constant(bounds_a) || !constant(bounds_b) {
        let program_four = reduced_program(4, reg_dim, 0.0, 0.0)?;
        return Ok(CollapseReport {
            verdict: CollapseVerdict::NotApplicable(
                "the collapse hypothesis requires constant bounds".into(),
            ),
            program_level: ProgramSpec {
                level,
                ..program_four.clone()
            },
            program_four,
            values: Vec::new(),
        });
    }
    let b = bounds_a[0];
    let d = bounds_b[0];
    let program_level = reduced_program(level, reg_dim, b, d)?;
    let program_four = reduced_program(4, reg_dim, b, d)?;

    // structure: canonical visible forms must coincide
    let ca = canonical_set(&program_level.set_a);
    let cb = canonical_set(&program_level.set_b);
    let ca4 = canonical_set(&program_four.set_a);
    let cb4 = canonical_set(&program_four.set_b);
    if ca != ca4 || cb != cb4 {
        return Ok(CollapseReport {
            verdict: CollapseVerdict::StructureMismatch(format!(
                "canonical sets differ: {ca:?}/{cb:?} vs {ca4:?}/{cb4:?}"
            )),
            program_level,
            program_four,
            values: Vec::new(),
        });
    }

    // numbers: solve both programs with the observable lifted over the
    // prefix registers
    let (k, l) = reduced_register_counts(level)?;
    debug_assert!(k >= 1 && l >= 1, "levels ≥ 4 have registers on both sides");
    let vis = reg_dim * reg_dim;
    let prefix_a = reg_dim.pow((k - 1) as u32);
    let prefix_b = reg_dim.pow((l - 1) as u32);
    let mut values = Vec::with_capacity(observables.len());
    for obs in observables {
        if obs.dim() != vis * vis {
            return Err(SaddleError::DimensionMismatch(format!(
                "observable dimension {} ≠ visible {vis}·{vis}",
                obs.dim()
            )));
        }
        let v4 = representative_value(&solve_reduced(
            obs,
            &program_four.set_a,
            &program_four.set_b,
        )?);
        let lifted = lift_observable(obs.entries(), prefix_a, vis, prefix_b, vis);
        let lifted_obs = Observable::new(lifted)?;
        let vl = representative_value(&solve_reduced(
            &lifted_obs,
            &program_level.set_a,
            &program_level.set_b,
        )?);
        values.push((vl, v4));
    }
    let verdict = match values.iter().find(|(vl, v4)| (vl - v4).abs() > tol) {
        Some(&(vl, v4)) => CollapseVerdict::ValueMismatch {
            level: vl,
            four: v4,
        },
        None => CollapseVerdict::Equal,
    };
    Ok(CollapseReport {
        verdict,
        program_level,
        program_four,
        values,
    })
}

/// The comparable value of a solve: the exact value when both orders
/// agree, otherwise the relaxation-certified side (identical constructions
/// on both programs, so pairwise comparable).
fn representative_value(result: &crate::types::SaddleResult) -> f64 {
    match result.certificate {
        crate::types::CertificateKind::ExactSdp => result.midpoint(),
        crate::types::CertificateKind::PptRelaxation => result.value_upper,
        crate::types::CertificateKind::SeesawBound => result.midpoint(),
    }
}
