//! Chain orchestration and instance generation behind the command-line
//! workbench.

pub mod chain;
pub mod gen;

pub use chain::{
    contract_verdict, run_pipeline, ChainError, ContractOutcome, KReport, PipelineConfig,
    PipelineReport,
};
pub use gen::{gen_cnf, gen_instance, GenError, Profile};
