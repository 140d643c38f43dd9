use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("non-positive or non-finite weight {weight} on edge ({i}, {j})")]
    InvalidWeight { i: usize, j: usize, weight: f64 },

    #[error("node index {index} out of range for {n_nodes} nodes")]
    NodeOutOfRange { index: usize, n_nodes: usize },

    #[error("node {0} is isolated; the normalized Laplacian is undefined")]
    IsolatedNode(usize),

    #[error("graph not connected")]
    Disconnected,

    #[error("requested {requested} eigenpairs, valid range is 1..={available}")]
    EigenCount { requested: usize, available: usize },

    #[error("bandwidth {n_w} out of range 1..={available}")]
    Bandwidth { n_w: usize, available: usize },

    #[error("node subset is empty")]
    EmptySubset,

    #[error("node {0} listed more than once in subset")]
    DuplicateSubsetNode(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vector is not unit norm (norm = {0})")]
    NotUnitNorm(f64),

    #[error("design mismatch: {0}")]
    DesignMismatch(&'static str),

    #[error("eigenvector {0} is constant; cannot map it onto a phase range")]
    ConstantEigenvector(usize),

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("invalid mesh: {0}")]
    Mesh(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            e @ (Error::Parse { .. } | Error::AtLine { .. }) => e,
            other => Error::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }

    /// True for failures to read or write the filesystem.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
