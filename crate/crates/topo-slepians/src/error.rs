use thiserror::Error;

/// Crate-wide error type. `code()` yields a stable machine-parseable
/// identifier used by the CLI's single-line failure output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex {simplex:?} is missing face {face:?}")]
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },

    #[error("duplicate simplex {vertices:?}")]
    DuplicateSimplex { vertices: Vec<usize> },

    #[error("simplex {vertices:?} has repeated vertices")]
    DegenerateSimplex { vertices: Vec<usize> },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("simplex order {k} out of range for complex of order {order}")]
    OrderOutOfRange { k: usize, order: usize },

    #[error("eigenvalue computation failed to converge")]
    EigenFailure,

    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error(
        "spectral partition mismatch: {gradient} gradient + {solenoidal} solenoidal \
         + {harmonic} harmonic != {edges} edges"
    )]
    PartitionMismatch {
        gradient: usize,
        solenoidal: usize,
        harmonic: usize,
        edges: usize,
    },

    #[error("empty {what} set in concentration pair")]
    EmptySet { what: &'static str },

    #[error("dictionary has no atoms")]
    EmptyDictionary,

    #[error("matching pursuit stalled: max residual correlation {correlation:e} with residual norm {residual:e}")]
    NoProgress { correlation: f64, residual: f64 },

    #[error("signal has zero norm")]
    ZeroSignal,

    #[error("degenerate grid: {reason}")]
    DegenerateGrid { reason: String },

    #[error("frame is degenerate: A={lower_bound:e} (lower_complete={lower_complete}, upper_complete={upper_complete})")]
    DegenerateFrame {
        lower_bound: f64,
        lower_complete: bool,
        upper_complete: bool,
    },

    #[error("invalid file contents: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MissingFace { .. } => "MISSING_FACE",
            Error::DuplicateSimplex { .. } => "DUPLICATE_SIMPLEX",
            Error::DegenerateSimplex { .. } => "DEGENERATE_SIMPLEX",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::OrderOutOfRange { .. } => "ORDER_OUT_OF_RANGE",
            Error::EigenFailure => "EIGEN_FAILURE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::PartitionMismatch { .. } => "PARTITION_MISMATCH",
            Error::EmptySet { .. } => "EMPTY_SET",
            Error::EmptyDictionary => "EMPTY_DICTIONARY",
            Error::NoProgress { .. } => "NO_PROGRESS",
            Error::ZeroSignal => "ZERO_SIGNAL",
            Error::DegenerateGrid { .. } => "DEGENERATE_GRID",
            Error::DegenerateFrame { .. } => "DEGENERATE_FRAME",
            Error::Format(_) => "BAD_FORMAT",
            Error::Io(_) => "IO",
            Error::Json(_) => "BAD_JSON",
            Error::Csv(_) => "BAD_CSV",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
