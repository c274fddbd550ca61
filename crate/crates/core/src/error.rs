use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("order {n} exceeds the limit {limit}")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("2-switch vertices must be distinct")]
    RepeatedSwitchVertex,
    #[error("2-switch is not active: needs edges ab, cd and non-edges ac, bd")]
    InactiveSwitch,
    #[error("degree sequence is not graphical")]
    NotGraphical,
    #[error("no {0} realizes the degree sequence")]
    NoRealizer(&'static str),
    #[error("graph is not a {0}")]
    WrongShape(&'static str),
    #[error("graph is not split")]
    NotSplit,
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("split graph is not balanced")]
    Unbalanced,
    #[error("vertex {0} is not in the independent side")]
    NotInIndependentSide(usize),
    #[error("transition space exceeds {0} members")]
    SpaceTooLarge(usize),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("{0} is not a member of N(Delta)")]
    NotDelta(u64),
    #[error("generator rejected: {0}")]
    GeneratorRejected(String),
    #[error("invalid prime triple: {0}")]
    InvalidPrimeTriple(String),
    #[error("set family precondition failed: {0}")]
    SetFamily(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
