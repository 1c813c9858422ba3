use std::fmt;

/// Failures surfaced by the analytic layer.
#[derive(Debug)]
pub enum CircleError {
    BadParameter(String),
    /// Estimated work exceeds the configured budget.
    Budget { estimated: f64, budget: f64 },
}

impl fmt::Display for CircleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleError::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            CircleError::Budget { estimated, budget } => {
                write!(f, "estimated work {estimated:.3e} exceeds budget {budget:.3e}")
            }
        }
    }
}

impl std::error::Error for CircleError {}
