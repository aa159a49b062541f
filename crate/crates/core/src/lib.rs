//! Exact verification of Ramanujan-type supercongruences, the lemmas they rest
//! on, and the Wilf–Zeilberger certificates behind them.
//!
//! Two independent evaluation routes exist for every congruence: an exact
//! rational oracle ([`claims::evaluate_sides`]) and a truncated p-adic fast
//! path over shared factorial tables. [`claims::verify_claim`] can run either
//! or both and insists they agree.

pub mod claims;
pub mod cli;
pub mod error;
pub mod exact;
pub mod padic;
pub mod report;
pub mod sequences;
pub mod wz;

pub use error::{Error, Result};
