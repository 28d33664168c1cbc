//! Bilinear saddle-point problems v* = max_ρ min_σ Tr(R(ρ⊗σ)) over
//! constrained density-matrix sets: minimax order swaps, separable and
//! entanglement-bounded feasible sets with bracket semantics, consistent
//! extensions, nested three-round evaluation, and the level-collapse
//! structure checks.

extern crate openblas_src;

mod collapse;
mod entropy;
mod error;
mod io;
mod linalg;
mod nested;
mod products;
mod ree;
mod sdp;
mod solve;
mod types;

pub use collapse::{
    canonical_set, check_collapse_structure, lift_observable, reduced_program,
    reduced_register_counts, CanonicalSet, CollapseReport, CollapseVerdict, ProgramSpec,
};
pub use entropy::{rel_entropy, rel_entropy_raw, vn_entropy, SUPPORT_TOL};
pub use error::{Result, SaddleError};
pub use io::{density_from_json, density_to_json, observable_from_json, observable_to_json};
pub use linalg::{
    bilinear_value, eigh, hermitian_basis, kron, max_eigenvalue, min_eigenvalue,
    partial_trace_first, partial_trace_second, partial_transpose_second, payoff_on_first,
    payoff_on_second, projector, pure_state_from_coords, CMat, CVec, Halton,
};
pub use nested::{solve_nested_level3, NestedOutcome};
pub use ree::{ree_upper, ReeOutcome};
pub use solve::{solve_level2, solve_reduced};
pub use types::{
    random_observable, CanonicalKind, CertificateKind, DensityMatrix, FeasibleKind,
    FeasibleSetSpec, Observable, SaddleResult,
};
