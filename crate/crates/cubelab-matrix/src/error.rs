use std::fmt;

/// Errors from plain matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// An operation required a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Row or column counts of the operands do not line up.
    DimensionMismatch { expected: String, found: String },
    /// A matrix that must be invertible is not.
    Singular,
    /// The highly non-singular test needs at least as many columns as rows.
    TooFewColumns { rows: usize, cols: usize },
    /// Zero rows or zero columns where content is required.
    Empty,
    /// Text format could not be parsed.
    Parse(String),
    /// An operation requires a highly non-singular input.
    NotHighlyNonSingular,
    /// Entries exceed the range supported by the requested conversion.
    EntryOutOfRange { row: usize, col: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            MatrixError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            MatrixError::Singular => write!(f, "matrix is singular"),
            MatrixError::TooFewColumns { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, need at least {rows} columns")
            }
            MatrixError::Empty => write!(f, "matrix has no rows or no columns"),
            MatrixError::Parse(msg) => write!(f, "parse error: {msg}"),
            MatrixError::NotHighlyNonSingular => {
                write!(f, "matrix is not highly non-singular")
            }
            MatrixError::EntryOutOfRange { row, col } => {
                write!(f, "entry at ({row},{col}) out of range for conversion")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Errors from block-structured validation.  Validation reports the first
/// violated condition, identified by block index where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxError {
    /// Shape parameters out of range (n, r, t, omega constraints).
    BadShape(String),
    /// Whole-matrix format differs from the one the shape dictates.
    FormatMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Wrong number of scalar or block arguments.
    BlockCount { expected: usize, found: usize },
    /// A diagonal scalar is zero.
    ZeroLambda { block: usize },
    /// A block has the wrong format.
    BlockFormat {
        block: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A block has a singular square minor.
    SingularBlockMinor { block: usize },
    /// Entry disagrees with the assembled form; first mismatch reported.
    StructureMismatch { row: usize, col: usize },
    /// Underlying arithmetic failure.
    Matrix(MatrixError),
}

impl fmt::Display for AuxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxError::BadShape(msg) => write!(f, "invalid shape: {msg}"),
            AuxError::FormatMismatch { expected, found } => write!(
                f,
                "format mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            AuxError::BlockCount { expected, found } => {
                write!(f, "expected {expected} blocks, found {found}")
            }
            AuxError::ZeroLambda { block } => write!(f, "block {block}: zero diagonal scalar"),
            AuxError::BlockFormat {
                block,
                expected,
                found,
            } => write!(
                f,
                "block {block}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            AuxError::SingularBlockMinor { block } => {
                write!(f, "block {block}: singular square minor")
            }
            AuxError::StructureMismatch { row, col } => {
                write!(f, "entry ({row},{col}) violates the block structure")
            }
            AuxError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AuxError {}

impl From<MatrixError> for AuxError {
    fn from(e: MatrixError) -> Self {
        AuxError::Matrix(e)
    }
}

/// Errors from adjuvant construction and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjError {
    /// Type parameters out of range (n >= 1, r >= 2).
    BadType(String),
    FormatMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// One of the two stored column assignments fails to validate.
    Witness { flipped: bool, source: AuxError },
    /// No witness is stored and the matrix is too wide for exhaustive search.
    NonConstructive { cols: usize, limit: usize },
    /// Exhaustive search found no valid column assignment.
    NoAssignment,
    /// Normalisation required by the constructive class is missing.
    NotNormalised(String),
    Matrix(MatrixError),
}

impl fmt::Display for AdjError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjError::BadType(msg) => write!(f, "invalid adjuvant type: {msg}"),
            AdjError::FormatMismatch { expected, found } => write!(
                f,
                "format mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            AdjError::Witness { flipped, source } => {
                let which = if *flipped { "flipped" } else { "forward" };
                write!(f, "{which} column assignment invalid: {source}")
            }
            AdjError::NonConstructive { cols, limit } => write!(
                f,
                "no stored assignment and {cols} columns exceeds the search limit {limit}"
            ),
            AdjError::NoAssignment => write!(f, "no valid column assignment exists"),
            AdjError::NotNormalised(msg) => write!(f, "not normalised: {msg}"),
            AdjError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AdjError {}

impl From<MatrixError> for AdjError {
    fn from(e: MatrixError) -> Self {
        AdjError::Matrix(e)
    }
}

impl From<AuxError> for AdjError {
    fn from(e: AuxError) -> Self {
        match e {
            AuxError::Matrix(m) => AdjError::Matrix(m),
            other => AdjError::Witness {
                flipped: false,
                source: other,
            },
        }
    }
}
