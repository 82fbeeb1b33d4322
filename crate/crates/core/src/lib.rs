//! Discrete-time stochastic and quantum thermodynamics.
//!
//! The crate is organized around trajectory-level bookkeeping: protocols
//! alternate deterministic drive segments with stochastic jumps (thermal
//! kernels or projective measurements), and every sampled or enumerated
//! trajectory carries a ledger of work, heat, and entropy production.
//! Monte Carlo estimators for the fluctuation theorems are paired with
//! exact enumeration oracles so that every stochastic result can be checked
//! against a closed-form average.
//!
//! Internally everything runs in natural units (k_B = 1, hbar = 1); the
//! [`si`] module converts to joules at output boundaries.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `qthermo-cli` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// `!(x > 0.0)` is the NaN-rejecting form of a positivity check; `x <= 0.0`
// would wave NaN parameters through validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops over small fixed-size matrices read better than iterator
// chains with enumerate/zip stacks.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod estimators;
pub mod gate;
pub mod info;
pub mod instances;
mod math;
pub mod quantum;
pub mod rng;
pub mod si;
pub mod stochastic;

pub use error::Error;

/// Re-export of the complex scalar used throughout the quantum modules.
pub use num_complex::Complex64;

/// Validation tolerance for probability normalization and stochasticity.
pub const PROB_TOL: f64 = 1e-12;

/// Validation tolerance for quantum state norms and unitarity.
pub const NORM_TOL: f64 = 1e-12;

/// Acceptable truncation leakage for bosonic field states.
pub const FIELD_NORM_TOL: f64 = 1e-10;
