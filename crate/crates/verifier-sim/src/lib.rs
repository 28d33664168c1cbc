//! Desk-scale classical simulation of the threshold-instance PCP verifier:
//! weighted monomial sampling, the deterministic Hadamard-test outcome
//! model, Hoeffding-style repetition, threshold acceptance, and an exact
//! acceptance-probability oracle for contract checking.

mod contract;
mod error;
mod exact;
mod sample;
mod spec;

pub use contract::{
    certificate_matches_full_check, check_pcp_contract, unique_grid_certificate, AcceptanceRow,
    ContractReport, ContractVerdict, DEFAULT_CONTRACT_BUDGET,
};
pub use error::{Result, VerifierError};
pub use exact::{
    acceptance_probability_exact, convolution_tail_reference, trinomial_tail, EXACT_ORACLE_LIMIT,
};
pub use sample::{run_verifier, sample_round, RoundOutcome, RunReport};
pub use spec::{build_verifier, Monomial, VerifierSpec};
