use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex label `{0}` already exists")]
    LabelCollision(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("graph has {0} vertices; at most {1} are supported")]
    TooManyVertices(usize, usize),
    #[error("canonical form limited to {limit} vertices, graph has {n}")]
    SizeBoundExceeded { n: usize, limit: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("empty vertex set is not a valid prime graph")]
    EmptyGraph,
    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    ImproperColoring(String, String),
    #[error("coloring does not match the graph: {0}")]
    ColoringMismatch(String),
    #[error("coloring uses {0} colors; orientation needs at most 3")]
    TooManyColors(usize),
    #[error("orientation is not a valid Frobenius orientation: {0}")]
    InvalidOrientation(String),
    #[error("graph is not realizable as the prime graph of a solvable group")]
    NotRealizable,
    #[error("graph is not a minimal prime graph")]
    NotMinimal,
    #[error("vertex `{0}` is not in I (it has outgoing arcs)")]
    NotSink(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("prime search exceeded cap {cap} (modulus {modulus})")]
    PrimeSearchCap { modulus: u64, cap: u64 },
    #[error("congruence violated: {0}")]
    Congruence(String),
    #[error("module verification failed: {0}")]
    ModuleVerification(String),
    #[error("invalid group plan: {0}")]
    InvalidPlan(String),
    #[error("group element does not match the model: {0}")]
    ShapeMismatch(String),
    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCap { order: String, cap: u64 },
    #[error("model has {0} primes; at most {1} supported")]
    TooManyPrimes(usize, usize),
    #[error("model is not plan-shaped: {0}")]
    NotPlanShaped(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// True for errors caused by a configured computational limit rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::TooManyVertices(..)
                | Error::SizeBoundExceeded { .. }
                | Error::PrimeSearchCap { .. }
                | Error::EnumerationCap { .. }
                | Error::TooManyPrimes(..)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
