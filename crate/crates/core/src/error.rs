use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("vertex count {0} out of range (1..=31)")]
    VertexCount(usize),
    #[error("{what} would need {needed} evaluations, budget is {budget}")]
    Budget { what: String, needed: String, budget: u64 },
    #[error("order q = {0} is not supported here")]
    Order(usize),
    #[error("variable spaces differ: [{0}] vs [{1}]")]
    SpaceMismatch(String, String),
    #[error("substitution error: {0}")]
    Substitution(String),
    #[error("complement transform produced a negative exponent; input is not P_q of an {0}-vertex graph")]
    NotAHomomorphismPolynomial(usize),
    #[error("interpolation is not integral: {0}")]
    Interpolation(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("duplicate input graphs: {0} and {1} are isomorphic")]
    DuplicateGraphs(String, String),
    #[error("stage {0} produced different keys for the same graph")]
    Nondeterministic(String),
    #[error("class store line {line}: {msg}")]
    CorruptRecord { line: usize, msg: String },
    #[error("class store version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
