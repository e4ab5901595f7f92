//! Decide whether a prior and a distribution over posteriors are
//! consistent with Bayesian updating under some (possibly misspecified)
//! subjective signal model.
//!
//! The library answers the question in three ways. It tests the grain
//! condition — the prior must be a mixture of the average posterior and
//! something else — which characterizes consistency; it constructs an
//! explicit rationalizing subjective model with verifiable certificates
//! when one exists; and it produces concrete witnesses (support
//! violations, heavier tails, unbounded density ratios) when none does.
//! Alongside the characterization sit the stricter classical notions
//! (Bayes plausibility and the Shmaya–Yariv reweighting condition), a
//! diagnostic-expectations application, and brute-force oracles used to
//! ground the analytic paths.
//!
//! Finite-state problems run in exact rational arithmetic by default, so
//! certificates are exact; continuous problems use double precision with
//! closed-form densities and tails.

pub mod diagnostic;
pub mod error;
pub mod grain;
pub mod io;
pub mod lp;
pub mod measures;
pub mod notions;
pub mod oracle;
pub mod rationalizer;
pub mod scalar;

pub use error::{Error, Result};
