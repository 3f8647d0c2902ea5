use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hypergraph has no edges of size >= 2")]
    EmptyHypergraph,
    #[error("edge {index} has no members")]
    EmptyEdge { index: usize },
    #[error("edge {index} has non-positive or non-finite weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("node index {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no eta weights for edges of size {0}")]
    MissingEta(usize),
    #[error("partitions cover different node sets ({0} vs {1} nodes)")]
    NodeSetMismatch(usize, usize),
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
