//! Thin semidefinite-programming layer.
//!
//! Problems are assembled over a real Hermitian basis; every complex PSD
//! constraint H ⪰ 0 is embedded as the real symmetric [[Re,−Im],[Im,Re]] ⪰ 0
//! and handed to an interior-point conic solver.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus, SupportedConeT,
};
use num_complex::Complex64;

use crate::error::{Result, SaddleError};
use crate::linalg::CMat;

/// Real symmetric embedding of a complex Hermitian matrix.
fn real_embedding(h: &CMat) -> Vec<Vec<f64>> {
    let d = h.nrows();
    let n = 2 * d;
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..d {
        for j in 0..d {
            let re = h[(i, j)].re;
            let im = h[(i, j)].im;
            g[i][j] = re;
            g[i + d][j + d] = re;
            g[i][j + d] = -im;
            g[i + d][j] = im;
        }
    }
    g
}

/// Scaled upper-triangle vectorization in the solver's column-major order.
fn svec(g: &[Vec<f64>]) -> Vec<f64> {
    let n = g.len();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for i in 0..=j {
            out.push(if i == j { g[i][j] } else { g[i][j] * sqrt2 });
        }
    }
    out
}

struct PsdBlock {
    real_dim: usize,
    constant: Vec<f64>,
    /// column index → svec of the factor
    factors: Vec<(usize, Vec<f64>)>,
}

/// Equality and inequality rows, then PSD blocks; minimizes q^T x.
pub struct HermitianSdp {
    num_vars: usize,
    q: Vec<f64>,
    equalities: Vec<(Vec<(usize, f64)>, f64)>,
    nonneg: Vec<(Vec<(usize, f64)>, f64)>, // rhs − a·x ≥ 0
    blocks: Vec<PsdBlock>,
}

pub struct SdpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Multipliers of the equality rows, in insertion order.
    pub eq_duals: Vec<f64>,
    /// The solver reached its accuracy targets (vs. stalling at an
    /// iteration cap).
    pub status_good: bool,
}

impl HermitianSdp {
    pub fn new(num_vars: usize) -> Self {
        HermitianSdp {
            num_vars,
            q: vec![0.0; num_vars],
            equalities: Vec::new(),
            nonneg: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// Contribution to the minimized objective.
    pub fn objective_coeff(&mut self, col: usize, w: f64) {
        self.q[col] += w;
    }

    /// Adds Σ coeffs·x = rhs.
    pub fn equality(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        self.equalities.push((coeffs, rhs));
    }

    /// Adds Σ coeffs·x ≤ rhs.
    pub fn leq(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        self.nonneg.push((coeffs, rhs));
    }

    /// Adds the constraint `constant + Σ_k x_k·factor_k ⪰ 0` (all complex
    /// Hermitian of one dimension).
    pub fn psd_block(&mut self, constant: &CMat, factors: Vec<(usize, CMat)>) {
        let real_dim = 2 * constant.nrows();
        let block = PsdBlock {
            real_dim,
            constant: svec(&real_embedding(constant)),
            factors: factors
                .into_iter()
                .map(|(col, m)| (col, svec(&real_embedding(&m))))
                .collect(),
        };
        self.blocks.push(block);
    }

    pub fn solve(self) -> Result<SdpSolution> {
        let n_eq = self.equalities.len();
        let n_leq = self.nonneg.len();
        let mut rows = n_eq + n_leq;
        let mut cones: Vec<SupportedConeT<f64>> = Vec::new();
        if n_eq > 0 {
            cones.push(SupportedConeT::ZeroConeT(n_eq));
        }
        if n_leq > 0 {
            cones.push(SupportedConeT::NonnegativeConeT(n_leq));
        }

        let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
        let mut b = vec![0.0; rows];
        for (r, (coeffs, rhs)) in self.equalities.iter().enumerate() {
            b[r] = *rhs;
            for &(c, v) in coeffs {
                triplets.push((r, c, v));
            }
        }
        for (k, (coeffs, rhs)) in self.nonneg.iter().enumerate() {
            let r = n_eq + k;
            b[r] = *rhs;
            for &(c, v) in coeffs {
                triplets.push((r, c, v));
            }
        }
        for block in &self.blocks {
            let len = block.real_dim * (block.real_dim + 1) / 2;
            // s = b − A x ∈ PSD: b = svec(constant), A[:,k] = −svec(factor)
            b.extend_from_slice(&block.constant);
            for (col, sv) in &block.factors {
                for (offset, &v) in sv.iter().enumerate() {
                    if v != 0.0 {
                        triplets.push((rows + offset, *col, -v));
                    }
                }
            }
            cones.push(SupportedConeT::PSDTriangleConeT(block.real_dim));
            rows += len;
        }

        let a = csc_from_triplets(rows, self.num_vars, &triplets);
        let p = CscMatrix::<f64>::zeros((self.num_vars, self.num_vars));
        let settings = DefaultSettingsBuilder::default()
            .verbose(false)
            .max_iter(200)
            .tol_gap_abs(1e-11)
            .tol_gap_rel(1e-11)
            .tol_feas(1e-10)
            .build()
            .map_err(|e| SaddleError::SolverFailure(format!("settings: {e:?}")))?;
        let mut solver = DefaultSolver::new(&p, &self.q, &a, &b, &cones, settings)
            .map_err(|e| SaddleError::SolverFailure(format!("setup: {e:?}")))?;
        solver.solve();
        let status = solver.solution.status;
        let status_good = matches!(
            status,
            SolverStatus::Solved | SolverStatus::AlmostSolved
        );
        if !matches!(
            status,
            SolverStatus::Solved
                | SolverStatus::AlmostSolved
                | SolverStatus::MaxIterations
                | SolverStatus::InsufficientProgress
        ) {
            return Err(SaddleError::SolverFailure(format!("status {status:?}")));
        }
        Ok(SdpSolution {
            x: solver.solution.x.clone(),
            objective: solver.solution.obj_val,
            eq_duals: solver.solution.z[..n_eq].to_vec(),
            status_good,
        })
    }
}

fn csc_from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> CscMatrix<f64> {
    let mut sorted: Vec<(usize, usize, f64)> =
        triplets.iter().map(|&(r, c, v)| (c, r, v)).collect();
    sorted.sort_by_key(|&(c, r, _)| (c, r));
    // merge duplicates
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(sorted.len());
    for (c, r, v) in sorted {
        match merged.last_mut() {
            Some((lc, lr, lv)) if *lc == c && *lr == r => *lv += v,
            _ => merged.push((c, r, v)),
        }
    }
    let mut colptr = vec![0usize; cols + 1];
    let mut rowval = Vec::with_capacity(merged.len());
    let mut nzval = Vec::with_capacity(merged.len());
    for (c, r, v) in merged {
        colptr[c + 1] += 1;
        rowval.push(r);
        nzval.push(v);
    }
    for c in 0..cols {
        colptr[c + 1] += colptr[c];
    }
    CscMatrix::new(rows, cols, colptr, rowval, nzval)
}

/// Convenience: identity-matrix factor of a given dimension.
pub fn cid(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// Convenience: the k-th Hermitian basis element scaled into a factor.
pub fn scaled(h: &CMat, s: f64) -> CMat {
    h * Complex64::new(s, 0.0)
}
