//! File formats, parallel counting and reference checks for `gramcode-core`.

pub mod formats;
pub mod parallel;
pub mod reproduce;

use gramcode_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const CHECK_MISMATCH: i32 = 4;
}

/// Exit code for an error raised anywhere below the command layer.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.is::<Mismatch>() {
        return exit::CHECK_MISMATCH;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => exit::BUDGET,
        Some(Error::FitMismatch(_)) => exit::CHECK_MISMATCH,
        _ => exit::VALIDATION,
    }
}

/// A computed value disagreed with an expected one.
#[derive(Debug, thiserror::Error)]
#[error("check failed: {0}")]
pub struct Mismatch(pub String);
