use thiserror::Error;

/// Errors produced by graph construction, parsing, and the analysis routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("graphs with {0} vertices are not supported (limit {1})")]
    UnsupportedSize(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("front data does not match the graph: {0}")]
    DataMismatch(String),
    #[error("automorphism search refused: {0}")]
    SizeGuard(String),
    #[error("unknown cycle: {0}")]
    UnknownCycle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
