use std::fmt;

#[derive(Debug)]
pub enum LabError {
    /// Spec violates a documented precondition.
    BadSpec(String),
    /// A sweep point tripped an operation or memory budget.
    Budget(String),
    /// A measurement failed for a non-budget reason.
    Measure(String),
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::BadSpec(msg) => write!(f, "bad spec: {msg}"),
            LabError::Budget(msg) => write!(f, "budget: {msg}"),
            LabError::Measure(msg) => write!(f, "measurement failed: {msg}"),
        }
    }
}

impl std::error::Error for LabError {}
