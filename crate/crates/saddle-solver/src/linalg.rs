//! Complex-matrix helpers shared by the solvers: Hermitian eigensystems,
//! tensor products, partial traces and transposes, and deterministic
//! low-discrepancy state sequences.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Hermitian eigendecomposition (ascending eigenvalues).
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = nalgebra::SymmetricEigen::new(hermitize(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap()
    });
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let dim = m.nrows();
    let mut vecs = CMat::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    let (vals, _) = eigh(m);
    vals[0]
}

pub fn max_eigenvalue(m: &CMat) -> f64 {
    let (vals, _) = eigh(m);
    *vals.last().unwrap()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Partial trace over the FIRST factor of a bipartite (da ⊗ db) operator.
pub fn partial_trace_first(m: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(m.nrows(), da * db);
    let mut out = CMat::zeros(db, db);
    for j in 0..db {
        for jp in 0..db {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..da {
                acc += m[(i * db + j, i * db + jp)];
            }
            out[(j, jp)] = acc;
        }
    }
    out
}

/// Partial trace over the SECOND factor of a bipartite (da ⊗ db) operator.
pub fn partial_trace_second(m: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(m.nrows(), da * db);
    let mut out = CMat::zeros(da, da);
    for i in 0..da {
        for ip in 0..da {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..db {
                acc += m[(i * db + j, ip * db + j)];
            }
            out[(i, ip)] = acc;
        }
    }
    out
}

/// Partial transpose on the SECOND factor of a bipartite (da ⊗ db) operator.
pub fn partial_transpose_second(m: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(m.nrows(), da * db);
    let mut out = CMat::zeros(da * db, da * db);
    for a in 0..da {
        for b in 0..db {
            for c in 0..da {
                for d in 0..db {
                    out[(a * db + b, c * db + d)] = m[(a * db + d, c * db + b)];
                }
            }
        }
    }
    out
}

/// σ-side payoff operator: Tr(R(ρ⊗σ)) = Tr(M σ) with
/// M[j,j'] = Σ_{i,i'} R[(i,j),(i',j')]·ρ[i',i].
pub fn payoff_on_second(r: &CMat, rho: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(r.nrows(), da * db);
    let mut m = CMat::zeros(db, db);
    for j in 0..db {
        for jp in 0..db {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..da {
                for ip in 0..da {
                    acc += r[(i * db + j, ip * db + jp)] * rho[(ip, i)];
                }
            }
            m[(j, jp)] = acc;
        }
    }
    m
}

/// ρ-side payoff operator: Tr(R(ρ⊗σ)) = Tr(N ρ) with
/// N[i,i'] = Σ_{j,j'} R[(i,j),(i',j')]·σ[j',j].
pub fn payoff_on_first(r: &CMat, sigma: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(r.nrows(), da * db);
    let mut n = CMat::zeros(da, da);
    for i in 0..da {
        for ip in 0..da {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..db {
                for jp in 0..db {
                    acc += r[(i * db + j, ip * db + jp)] * sigma[(jp, j)];
                }
            }
            n[(i, ip)] = acc;
        }
    }
    n
}

pub fn bilinear_value(r: &CMat, rho: &CMat, sigma: &CMat, da: usize, db: usize) -> f64 {
    let m = payoff_on_second(r, rho, da, db);
    (m * sigma).trace().re
}

/// Hermitian basis of dim×dim matrices: diagonal units, then for each pair
/// (i<j) the symmetric and antisymmetric combinations. Column-major pair
/// order keeps everything deterministic.
pub fn hermitian_basis(dim: usize) -> Vec<CMat> {
    let mut basis = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let mut m = CMat::zeros(dim, dim);
        m[(i, i)] = Complex64::new(1.0, 0.0);
        basis.push(m);
    }
    for j in 1..dim {
        for i in 0..j {
            let mut s = CMat::zeros(dim, dim);
            s[(i, j)] = Complex64::new(1.0, 0.0);
            s[(j, i)] = Complex64::new(1.0, 0.0);
            basis.push(s);
            let mut a = CMat::zeros(dim, dim);
            a[(i, j)] = Complex64::new(0.0, 1.0);
            a[(j, i)] = Complex64::new(0.0, -1.0);
            basis.push(a);
        }
    }
    basis
}

/// Reconstructs Σ x_k H_k over the hermitian basis.
pub fn from_basis_coords(dim: usize, coords: &[f64]) -> CMat {
    let basis = hermitian_basis(dim);
    debug_assert_eq!(coords.len(), basis.len());
    let mut out = CMat::zeros(dim, dim);
    for (x, h) in coords.iter().zip(&basis) {
        out += h * Complex64::new(*x, 0.0);
    }
    out
}

/// Halton low-discrepancy sequence in [0,1]^d (index starts at 1).
pub struct Halton {
    index: u64,
    bases: Vec<u64>,
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

impl Halton {
    pub fn new(dim: usize, offset: u64) -> Self {
        Halton {
            index: offset + 1,
            bases: PRIMES[..dim].to_vec(),
        }
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let i = self.index;
        self.index += 1;
        self.bases
            .iter()
            .map(|&b| {
                let mut f = 1.0;
                let mut r = 0.0;
                let mut n = i;
                while n > 0 {
                    f /= b as f64;
                    r += f * (n % b) as f64;
                    n /= b;
                }
                r
            })
            .collect()
    }
}

/// Pure state of dimension d from 2d−2 coordinates in [0,1]
/// (hyperspherical amplitudes and relative phases).
pub fn pure_state_from_coords(dim: usize, coords: &[f64]) -> CVec {
    debug_assert_eq!(coords.len(), 2 * dim - 2);
    // amplitudes from stick-breaking on the simplex of probabilities
    let mut probs = Vec::with_capacity(dim);
    let mut remaining = 1.0;
    for k in 0..dim - 1 {
        // spread the coordinate with a power transform so deep levels
        // still see the whole range
        let t = coords[k].clamp(0.0, 1.0);
        let frac = 1.0 - t.powf(1.0 / (dim - k - 1) as f64);
        let p = remaining * frac;
        probs.push(p);
        remaining -= p;
    }
    probs.push(remaining.max(0.0));
    let mut v = CVec::zeros(dim);
    for k in 0..dim {
        let amp = probs[k].max(0.0).sqrt();
        let phase = if k == 0 {
            0.0
        } else {
            2.0 * std::f64::consts::PI * coords[dim - 2 + k]
        };
        v[k] = Complex64::from_polar(amp, phase);
    }
    let norm = v.norm();
    if norm > 0.0 {
        v /= Complex64::new(norm, 0.0);
    } else {
        v[0] = Complex64::new(1.0, 0.0);
    }
    v
}

pub fn projector(v: &CVec) -> CMat {
    v * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bell() -> CMat {
        let mut v = CVec::zeros(4);
        v[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[3] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        projector(&v)
    }

    #[test]
    fn partial_traces_of_bell_are_maximally_mixed() {
        let rho = bell();
        let ta = partial_trace_first(&rho, 2, 2);
        let tb = partial_trace_second(&rho, 2, 2);
        for m in [ta, tb] {
            assert_relative_eq!(m[(0, 0)].re, 0.5, epsilon = 1e-12);
            assert_relative_eq!(m[(1, 1)].re, 0.5, epsilon = 1e-12);
            assert!(m[(0, 1)].norm() < 1e-12);
        }
    }

    #[test]
    fn bell_fails_ppt() {
        let pt = partial_transpose_second(&bell(), 2, 2);
        assert!(min_eigenvalue(&pt) < -0.4);
    }

    #[test]
    fn payoff_operators_reproduce_bilinear_form() {
        let r = kron(&bell(), &identity(1)); // 4x4 observable on 2⊗2
        let rho = CMat::identity(2, 2) * Complex64::new(0.5, 0.0);
        let mut sigma = CMat::zeros(2, 2);
        sigma[(0, 0)] = Complex64::new(1.0, 0.0);
        let direct = (r.clone() * kron(&rho, &sigma)).trace().re;
        let via_m = (payoff_on_second(&r, &rho, 2, 2) * sigma.clone()).trace().re;
        let via_n = (payoff_on_first(&r, &sigma, 2, 2) * rho).trace().re;
        assert_relative_eq!(direct, via_m, epsilon = 1e-12);
        assert_relative_eq!(direct, via_n, epsilon = 1e-12);
    }

    #[test]
    fn eigh_orders_ascending() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        m[(1, 1)] = Complex64::new(-1.0, 0.0);
        let (vals, vecs) = eigh(&m);
        assert!(vals[0] < vals[1]);
        // reconstruct
        let d = CMat::from_diagonal(&CVec::from_iterator(
            2,
            vals.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        let back = &vecs * d * vecs.adjoint();
        assert!((back - m).norm() < 1e-12);
    }

    #[test]
    fn pure_states_are_normalized() {
        let mut h = Halton::new(6, 0);
        for _ in 0..50 {
            let p = h.next_point();
            let v = pure_state_from_coords(4, &p[..6]);
            assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_basis_spans(){
        let basis = hermitian_basis(3);
        assert_eq!(basis.len(), 9);
        for h in &basis {
            assert!((h - dagger(h)).norm() < 1e-15);
        }
    }
}
