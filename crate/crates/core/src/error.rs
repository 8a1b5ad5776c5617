use thiserror::Error;

/// Every failure the library reports. Variant names mirror the error codes
/// exported through the C ABI and printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("search budget of {nodes} nodes exhausted{}", bounds_suffix(*lower, *upper))]
    BudgetExceeded { nodes: u64, lower: Option<u64>, upper: Option<u64> },
    #[error("core coloring is not a proper {0}-coloring of the core")]
    InvalidCoreColoring(usize),
    #[error("colorings still exist at the cap n = {cap}")]
    CapReached { cap: usize },
    #[error("family contains no forest, the bound is infinite")]
    NoForest,
    #[error("bad k = {0}")]
    BadK(usize),
    #[error("bad n = {0}")]
    BadN(usize),
    #[error("bad d = {0}")]
    BadD(usize),
    #[error("bad m = {0}")]
    BadM(usize),
    #[error("factor {0} is not a proper triangle factor")]
    NotProper(usize),
    #[error("hypergraph is not 3-regular")]
    NotThreeRegular,
    #[error("hypergraph is not equipartite")]
    NotEquipartite,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

fn bounds_suffix(lower: Option<u64>, upper: Option<u64>) -> String {
    match (lower, upper) {
        (Some(l), Some(u)) => format!(" (value in [{l}, {u}])"),
        (Some(l), None) => format!(" (value >= {l})"),
        (None, Some(u)) => format!(" (value <= {u})"),
        (None, None) => String::new(),
    }
}

impl Error {
    /// Stable upper-case code used by the CLI and the FFI layer.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "OUT_OF_RANGE",
            Error::SelfLoop(_) => "SELF_LOOP",
            Error::DuplicateEdge(_) => "DUPLICATE_EDGE",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::InvalidCoreColoring(_) => "INVALID_CORE_COLORING",
            Error::CapReached { .. } => "CAP_REACHED",
            Error::NoForest => "NO_FOREST",
            Error::BadK(_) => "BAD_K",
            Error::BadN(_) => "BAD_N",
            Error::BadD(_) => "BAD_D",
            Error::BadM(_) => "BAD_M",
            Error::NotProper(_) => "NOT_PROPER",
            Error::NotThreeRegular => "NOT_3_REGULAR",
            Error::NotEquipartite => "NOT_EQUIPARTITE",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::Parse(_) => "PARSE_ERROR",
            Error::VerifyFailed(_) => "VERIFY_FAILED",
            Error::Invalid(_) => "INVALID_ARGUMENT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
