//! Simultaneous-approximation toolkit for machine scheduling.
//!
//! A schedule is judged by its sorted load vector against *every* feasible
//! competitor at once: the coordinate ratio `c` compares sorted loads
//! entrywise, the prefix-sum ratio `s` compares partial sums. This crate
//! implements the load-vector calculus, instance generators for the extremal
//! families, the classical schedulers (list scheduling, LPT, McNaughton and
//! its recursive variant, fractional splits), a brute-force oracle for exact
//! small-instance optima, and a verification suite that measures each claimed
//! bound against the oracle.

pub mod analysis;
pub mod error;
pub mod instance;
pub mod json;
pub mod loads;
pub mod oracle;
pub mod schedule;

pub use error::{Error, Result};
