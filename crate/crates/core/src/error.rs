use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),

    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance has {n} vertices, above the cap of {cap}; {hint}")]
    OverCap { n: usize, cap: usize, hint: &'static str },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{stage} failed: {reason}")]
    Stage { stage: &'static str, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn stage(stage: &'static str, reason: impl Into<String>) -> Self {
        Error::Stage { stage, reason: reason.into() }
    }
}
