//! Valiant–Vazirani isolation: conjoin random pairwise-independent XOR hash
//! constraints over the original variables so that a satisfiable formula
//! becomes uniquely satisfiable with noticeable probability, while
//! unsatisfiable formulas stay unsatisfiable with certainty.
//!
//! The hash family is `h(x) = Ax ⊕ b` with uniformly random `A` and `b`;
//! the constraint is `h(x) = b`, folded row by row into parity constraints.
//! Hashing touches only the original variables: the Tseytin auxiliaries of
//! the input formula are functionally determined, and hashing them would
//! distort the witness semantics.

mod encode;
mod hash;
mod isolate;

pub use encode::conjoin_rows;
pub use hash::{HashConstraint, HashRow};
pub use isolate::{isolate, isolation_success, IsolationError, Result};
