//! Deterministic compilation of multilinear threshold instances into CNF:
//! monomial conjunction gates, constant-multiplier bit selection, an adder
//! network, and a threshold comparator, all via Tseytin transformation with
//! functionally forced auxiliaries.

mod builder;
mod compile;
mod dimacs;
mod error;
mod formula;
mod wires;

pub use builder::CircuitBuilder;
pub use compile::mtp_to_sat;
pub use dimacs::{parse_dimacs, sidecar_json, to_dimacs, SidecarMap};
pub use error::{CnfError, Result};
pub use formula::{CnfFormula, Lit, Propagation, VarRole};
pub use wires::{Wire, WireBundle};
