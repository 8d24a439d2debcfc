use abel_core::Error as CoreError;
use thiserror::Error;

use crate::parse::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("function spec: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                CoreError::InfeasibleCurve { .. }
                | CoreError::NonConvergence { .. }
                | CoreError::Evaluation { .. }
                | CoreError::Domain { .. },
            ) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}
