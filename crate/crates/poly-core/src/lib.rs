//! Exact representation, evaluation, and brute-force decision of
//! multilinear threshold instances.
//!
//! Everything here is integer or rational arithmetic: coefficients are
//! integers under an explicit scale, thresholds and spacings are exact
//! rationals, and the decision procedures never round.

mod decide;
mod error;
mod instance;
mod io;
mod poly;

pub use decide::{
    brute_force_decide, classify_promise, count_witnesses, Decision, PromiseClass,
    DEFAULT_ENUM_BUDGET,
};
pub use error::{PolyError, Result};
pub use instance::{MtpInstance, Rat};
pub use poly::{Assignment, MultilinearPoly};
