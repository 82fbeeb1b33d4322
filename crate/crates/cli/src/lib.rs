//! Experiment orchestration around `qthermo-core`: config parsing and
//! validation, seeded runs fanned out over a worker pool, CSV/JSON result
//! tables with reproducibility manifests, and the acceptance verifier.

// `!(x > 0.0)` rejects NaN during validation; `x <= 0.0` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod config;
pub mod experiments;
pub mod output;
pub mod pool;
pub mod presets;

use qthermo_core::Error as CoreError;

/// Process exit codes, fixed so CI can tell failure classes apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Io = 1,
    Validation = 2,
    AcceptanceFailed = 3,
    Capacity = 4,
}

/// Top-level error with its exit classification.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),

    /// All schema violations found in a config document, not just the first.
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{failed} acceptance criteria failed")]
    Acceptance { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(CoreError::Capacity { .. }) => ExitCode::Capacity,
            CliError::Core(_) => ExitCode::Validation,
            CliError::Validation(_) => ExitCode::Validation,
            CliError::Json(_) => ExitCode::Validation,
            CliError::Io(_) => ExitCode::Io,
            CliError::Acceptance { .. } => ExitCode::AcceptanceFailed,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
