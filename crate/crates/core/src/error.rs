use thiserror::Error;

use crate::grid::Point;

/// Errors raised by the fuzzy IFS library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("level scale must have at least one nonzero level")]
    InvalidScale,

    #[error("level {level} outside 0..={top}")]
    LevelOutOfRange { level: u32, top: u16 },

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("level scale mismatch: {0} vs {1}")]
    ScaleMismatch(u16, u16),

    #[error("membership vector has {got} entries, grid has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("fuzzy set has empty support")]
    EmptySupport,

    #[error("fuzzy set is not normal: highest level {height} < {top}")]
    NotNormal { height: u16, top: u16 },

    #[error("support leaves the subgrid")]
    SupportOutsideSubgrid,

    #[error("invalid grey level map: {0}")]
    InvalidGreyMap(String),

    #[error("grey system is not admissible: no map satisfies ϱ_j(1)=1")]
    NotAdmissible,

    #[error("Hausdorff distance undefined between an empty and a nonempty set")]
    OneSidedEmpty,

    #[error("image of point {point:?} under map {map} escapes the grid")]
    Escape { map: usize, point: Point },

    #[error("invalid pseudometric spec `{0}`")]
    InvalidPseudometric(String),

    #[error("unknown distance `{0}`")]
    UnknownDistance(String),

    #[error("invalid comparison function: {0}")]
    InvalidComparison(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid address: {0}")]
    InvalidAddress(String),

    #[error("no convergence after {} iterations (last distance {:?})", trace.len(), trace.last())]
    NoConvergence { trace: Vec<f64>, trace_dh: Vec<f64> },

    #[error("no invariant box found within {0} growth steps")]
    NoInvariantBox(usize),

    #[error("address enumeration needs more than {budget} leaves; prune the grey system or lower the depth")]
    EnumerationBudget { budget: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
