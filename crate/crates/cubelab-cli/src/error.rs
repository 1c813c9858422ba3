use std::fmt;

use cubelab_circle::CircleError;
use cubelab_cubes::CubeError;
use cubelab_dioph::CountError;
use cubelab_lab::LabError;
use cubelab_matrix::{AdjError, AuxError, MatrixError};

/// A failed run, carrying the process exit code: 2 for usage problems,
/// 3 for tripped budget guards, 4 for validation failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Invalid(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Invalid(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Budget(msg) => write!(f, "budget: {msg}"),
            CliError::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match &e {
            CountError::Budget { .. } => CliError::Budget(e.to_string()),
            CountError::Cube(CubeError::GuardExceeded { .. }) => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CubeError> for CliError {
    fn from(e: CubeError) -> Self {
        match &e {
            CubeError::GuardExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CircleError> for CliError {
    fn from(e: CircleError) -> Self {
        match &e {
            CircleError::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match &e {
            LabError::Budget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<AuxError> for CliError {
    fn from(e: AuxError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<AdjError> for CliError {
    fn from(e: AdjError) -> Self {
        match &e {
            AdjError::NonConstructive { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
