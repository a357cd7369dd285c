use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("instance too large for {operation}: n = {n}, limit = {limit}")]
    Size {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypergraph has no hyperedges")]
    NoCliques,

    #[error("could not connect absorber {from} to absorber {to}")]
    Assembly { from: usize, to: usize },

    #[error("no free absorber segment for vertex {vertex}")]
    Capacity { vertex: usize },

    #[error("hitting set {index} contains no connectable clique")]
    InfeasibleSet { index: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("stage {stage} failed: {reason}")]
    Stage { stage: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
