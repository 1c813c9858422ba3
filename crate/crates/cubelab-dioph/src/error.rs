use std::fmt;

use cubelab_matrix::MatrixError;
use cubelab_cubes::CubeError;

#[derive(Debug)]
pub enum CountError {
    /// The estimated work exceeds the configured operation budget.
    Budget { estimated: f64, budget: f64 },
    /// Instance violates a documented precondition.
    BadInstance(String),
    Matrix(MatrixError),
    Cube(CubeError),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::Budget { estimated, budget } => {
                write!(f, "estimated {estimated:.3e} operations exceeds budget {budget:.3e}")
            }
            CountError::BadInstance(msg) => write!(f, "bad instance: {msg}"),
            CountError::Matrix(e) => write!(f, "matrix: {e}"),
            CountError::Cube(e) => write!(f, "cubes: {e}"),
        }
    }
}

impl std::error::Error for CountError {}

impl From<MatrixError> for CountError {
    fn from(e: MatrixError) -> Self {
        CountError::Matrix(e)
    }
}

impl From<CubeError> for CountError {
    fn from(e: CubeError) -> Self {
        CountError::Cube(e)
    }
}
