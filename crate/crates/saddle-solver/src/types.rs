//! Domain types: states, observables, feasible-set descriptions, results.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SaddleError};
use crate::linalg::{eigh, hermitize, identity, min_eigenvalue, CMat, CVec};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dim: usize,
    entries: CMat,
}

impl DensityMatrix {
    pub fn new(entries: CMat) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 {
            return Err(SaddleError::InvalidState("matrix not square".into()));
        }
        if (&entries - entries.adjoint()).norm() > HERMITICITY_TOL {
            return Err(SaddleError::InvalidState("not Hermitian".into()));
        }
        if min_eigenvalue(&entries) < -PSD_TOL {
            return Err(SaddleError::InvalidState(format!(
                "not PSD: min eigenvalue {}",
                min_eigenvalue(&entries)
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(SaddleError::InvalidState(format!("trace {tr} ≠ 1")));
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// Projects an approximately valid matrix onto the state set:
    /// hermitize, clip negative eigenvalues, renormalize. Returns the
    /// projected state and the projection residual.
    pub fn project(entries: &CMat) -> (Self, f64) {
        let h = hermitize(entries);
        let (vals, vecs) = eigh(&h);
        let clipped: Vec<f64> = vals.iter().map(|&v| v.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        let dim = h.nrows();
        let normalized: Vec<f64> = if total > 1e-14 {
            clipped.iter().map(|&v| v / total).collect()
        } else {
            vec![1.0 / dim as f64; dim]
        };
        let mut out = CMat::zeros(dim, dim);
        for (k, &p) in normalized.iter().enumerate() {
            let col = vecs.column(k);
            out += (col * col.adjoint()) * Complex64::new(p, 0.0);
        }
        let residual = (&out - entries).norm();
        (
            DensityMatrix {
                dim,
                entries: out,
            },
            residual,
        )
    }

    pub fn pure(v: &CVec) -> Result<Self> {
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(SaddleError::InvalidState("zero vector".into()));
        }
        let v = v / Complex64::new(norm, 0.0);
        Ok(DensityMatrix {
            dim: v.len(),
            entries: &v * v.adjoint(),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            dim,
            entries: identity(dim) * Complex64::new(1.0 / dim as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }
}

/// Hermitian observable with spectrum in [0, 1].
#[derive(Clone, Debug)]
pub struct Observable {
    dim: usize,
    entries: CMat,
}

impl Observable {
    pub fn new(entries: CMat) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 {
            return Err(SaddleError::InvalidObservable("matrix not square".into()));
        }
        if (&entries - entries.adjoint()).norm() > HERMITICITY_TOL {
            return Err(SaddleError::InvalidObservable("not Hermitian".into()));
        }
        let (vals, _) = eigh(&entries);
        if vals[0] < -PSD_TOL || *vals.last().unwrap() > 1.0 + PSD_TOL {
            return Err(SaddleError::InvalidObservable(format!(
                "spectrum [{}, {}] escapes [0,1]",
                vals[0],
                vals.last().unwrap()
            )));
        }
        Ok(Observable { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Observable {
            dim,
            entries: identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }
}

/// Deterministic random observable: Gaussian Hermitian matrix with its
/// spectrum affinely mapped onto [0, 1].
pub fn random_observable(dim: usize, seed: u64) -> Observable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = Complex64::new(gauss(&mut rng), gauss(&mut rng));
        }
    }
    let h = hermitize(&g);
    let (vals, vecs) = eigh(&h);
    let lo = vals[0];
    let hi = *vals.last().unwrap();
    let span = (hi - lo).max(1e-12);
    let mut out = CMat::zeros(dim, dim);
    for (k, &v) in vals.iter().enumerate() {
        let col = vecs.column(k);
        out += (col * col.adjoint()) * Complex64::new((v - lo) / span, 0.0);
    }
    Observable { dim, entries: out }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller from two uniform draws
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Feasible-set description for one player.
#[derive(Clone, Debug)]
pub enum FeasibleKind {
    Full,
    /// REE = 0 between the last register and the rest.
    Separable,
    /// REE ≤ b (nats) between the last register and the rest.
    EntBounded(f64),
    /// Consistent extension: tracing out the last register must give the
    /// parent state; optionally entanglement-bounded as well.
    Consistent {
        parent: DensityMatrix,
        ent_bound: Option<f64>,
    },
}

#[derive(Clone, Debug)]
pub struct FeasibleSetSpec {
    pub registers: Vec<usize>,
    pub kind: FeasibleKind,
}

impl FeasibleSetSpec {
    pub fn full(registers: Vec<usize>) -> Self {
        FeasibleSetSpec {
            registers,
            kind: FeasibleKind::Full,
        }
    }

    pub fn separable(registers: Vec<usize>) -> Self {
        FeasibleSetSpec {
            registers,
            kind: FeasibleKind::Separable,
        }
    }

    pub fn ent_bounded(registers: Vec<usize>, b: f64) -> Self {
        FeasibleSetSpec {
            registers,
            kind: FeasibleKind::EntBounded(b),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.registers.iter().product()
    }

    /// (rest, last) dimensions of the entanglement split.
    pub fn split(&self) -> (usize, usize) {
        let last = *self.registers.last().unwrap();
        (self.total_dim() / last, last)
    }

    /// Largest REE achievable across the split, ln min(d_rest, d_last).
    pub fn max_entanglement(&self) -> f64 {
        let (rest, last) = self.split();
        (rest.min(last) as f64).ln()
    }

    pub fn validate(&self) -> Result<()> {
        if self.registers.is_empty() || self.registers.iter().any(|&d| d == 0) {
            return Err(SaddleError::InvalidSet("empty register list".into()));
        }
        match &self.kind {
            FeasibleKind::EntBounded(b) if *b < 0.0 => {
                Err(SaddleError::InvalidSet("negative entanglement bound".into()))
            }
            FeasibleKind::Consistent { parent, ent_bound } => {
                let (rest, _) = self.split();
                if parent.dim() != rest {
                    return Err(SaddleError::InvalidSet(format!(
                        "parent dimension {} does not match traced shape {rest}",
                        parent.dim()
                    )));
                }
                if ent_bound.is_some_and(|b| b < 0.0) {
                    return Err(SaddleError::InvalidSet(
                        "negative entanglement bound".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Resolves the kind against the split geometry: a single register is
    /// always FULL, a bound at or above the maximum is FULL, a zero bound
    /// is SEPARABLE.
    pub fn canonical_kind(&self) -> CanonicalKind {
        if self.registers.len() == 1 {
            return CanonicalKind::Full;
        }
        match &self.kind {
            FeasibleKind::Full => CanonicalKind::Full,
            FeasibleKind::Separable => CanonicalKind::Separable,
            FeasibleKind::EntBounded(b) => {
                if *b <= 0.0 {
                    CanonicalKind::Separable
                } else if *b >= self.max_entanglement() - 1e-12 {
                    CanonicalKind::Full
                } else {
                    CanonicalKind::EntBounded(*b)
                }
            }
            FeasibleKind::Consistent { ent_bound, .. } => {
                let inner = match ent_bound {
                    None => Box::new(CanonicalKind::Full),
                    Some(b) if *b <= 0.0 => Box::new(CanonicalKind::Separable),
                    Some(b) if *b >= self.max_entanglement() - 1e-12 => {
                        Box::new(CanonicalKind::Full)
                    }
                    Some(b) => Box::new(CanonicalKind::EntBounded(*b)),
                };
                CanonicalKind::Consistent(inner)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalKind {
    Full,
    Separable,
    EntBounded(f64),
    Consistent(Box<CanonicalKind>),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    ExactSdp,
    PptRelaxation,
    SeesawBound,
}

#[derive(Clone, Debug)]
pub struct SaddleResult {
    pub value_lower: f64,
    pub value_upper: f64,
    pub rho: Option<DensityMatrix>,
    pub sigma: Option<DensityMatrix>,
    pub iterations: u32,
    pub certificate: CertificateKind,
    pub converged: bool,
}

impl SaddleResult {
    pub fn bracket_valid(&self) -> bool {
        self.value_lower <= self.value_upper + 1e-8
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.value_lower + self.value_upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_repairs_noise() {
        let mut m = identity(2) * Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(0.1, 0.2);
        // not Hermitian, wrong trace
        let (state, residual) = DensityMatrix::project(&m);
        assert!(DensityMatrix::new(state.entries().clone()).is_ok());
        assert!(residual > 0.0);
    }

    #[test]
    fn observable_spectrum_enforced() {
        let m = identity(2) * Complex64::new(1.5, 0.0);
        assert!(Observable::new(m).is_err());
        let o = random_observable(4, 7);
        let (vals, _) = eigh(o.entries());
        assert!(vals[0] >= -1e-9 && *vals.last().unwrap() <= 1.0 + 1e-9);
    }

    #[test]
    fn random_observables_are_deterministic() {
        let a = random_observable(4, 11);
        let b = random_observable(4, 11);
        assert!((a.entries() - b.entries()).norm() < 1e-15);
    }

    #[test]
    fn canonical_kinds() {
        let s = FeasibleSetSpec::ent_bounded(vec![2, 2], 0.0);
        assert_eq!(s.canonical_kind(), CanonicalKind::Separable);
        let s = FeasibleSetSpec::ent_bounded(vec![2, 2], 2.0f64.ln());
        assert_eq!(s.canonical_kind(), CanonicalKind::Full);
        let s = FeasibleSetSpec::ent_bounded(vec![2, 2], 0.3);
        assert_eq!(s.canonical_kind(), CanonicalKind::EntBounded(0.3));
        let s = FeasibleSetSpec::full(vec![4]);
        assert_eq!(s.canonical_kind(), CanonicalKind::Full);
    }

    #[test]
    fn consistent_parent_dimension_checked() {
        let parent = DensityMatrix::maximally_mixed(3);
        let spec = FeasibleSetSpec {
            registers: vec![2, 2],
            kind: FeasibleKind::Consistent {
                parent,
                ent_bound: None,
            },
        };
        assert!(spec.validate().is_err());
    }
}
