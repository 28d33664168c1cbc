//! Von Neumann and quantum relative entropy, natural base throughout.

use crate::linalg::{eigh, CMat};
use crate::types::DensityMatrix;

/// Support threshold below which an eigenvalue counts as zero.
pub const SUPPORT_TOL: f64 = 1e-12;

pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    let (vals, _) = eigh(rho.entries());
    -vals
        .iter()
        .filter(|&&p| p > SUPPORT_TOL)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// S(ρ‖σ) = Tr[ρ ln ρ] − Tr[ρ ln σ] in nats; +∞ when the support of ρ
/// escapes the support of σ.
pub fn rel_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    rel_entropy_raw(rho.entries(), sigma.entries())
}

/// Same computation on raw Hermitian PSD matrices (used inside iterative
/// minimizers where renormalization would fight the line search).
pub fn rel_entropy_raw(rho: &CMat, sigma: &CMat) -> f64 {
    let (rvals, rvecs) = eigh(rho);
    let (svals, svecs) = eigh(sigma);
    let overlaps = rvecs.adjoint() * &svecs; // ⟨u_i|v_j⟩
    let dim = rvals.len();

    let mut acc = 0.0;
    for i in 0..dim {
        let r = rvals[i];
        if r <= SUPPORT_TOL {
            continue;
        }
        acc += r * r.ln();
        for j in 0..dim {
            let w = overlaps[(i, j)].norm_sqr();
            if w < 1e-16 {
                continue;
            }
            let s = svals[j];
            if s <= SUPPORT_TOL {
                // weight on a null direction of σ
                return f64::INFINITY;
            }
            acc -= r * w * s.ln();
        }
    }
    acc
}
