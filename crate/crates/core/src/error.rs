//! Error type shared by all modules.

use alloc::string::String;

/// Errors raised by constructors and operations.
///
/// The categories map onto distinct CLI exit codes, so they are kept
/// deliberately coarse: what failed and why, not a deep taxonomy.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its mathematical domain (negative temperature,
    /// probability outside [0, 1], KL support violation, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are individually valid but mutually inconsistent
    /// (dimension mismatches, trajectory/protocol length mismatch, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// The request exceeds a hard resource cap.
    #[error("capacity error: {detail} ({rows} rows requested, cap {cap})")]
    Capacity {
        detail: String,
        rows: u128,
        cap: u128,
    },

    /// An operation is undefined for this input (zero denominator, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
