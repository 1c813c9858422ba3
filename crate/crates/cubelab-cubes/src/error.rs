use std::fmt;

/// Errors from table construction, parameter validation, and the cache layer.
#[derive(Debug)]
pub enum CubeError {
    /// A parameter violates its documented precondition.
    BadParameter(String),
    /// The requested table would exceed the configured memory guard.
    GuardExceeded { entries: u64, guard: u64 },
    /// A per-entry counter overflowed its 32-bit slot.
    CountOverflow { n: u64 },
    /// Cache file unreadable or not in the expected format.
    CacheFormat(String),
    Io(std::io::Error),
}

impl fmt::Display for CubeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeError::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            CubeError::GuardExceeded { entries, guard } => {
                write!(f, "table of {entries} entries exceeds guard of {guard}")
            }
            CubeError::CountOverflow { n } => write!(f, "count overflow at n = {n}"),
            CubeError::CacheFormat(msg) => write!(f, "cache format: {msg}"),
            CubeError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl std::error::Error for CubeError {}

impl From<std::io::Error> for CubeError {
    fn from(e: std::io::Error) -> Self {
        CubeError::Io(e)
    }
}
