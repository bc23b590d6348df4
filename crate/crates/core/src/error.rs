use thiserror::Error;

use crate::rational::Rational;

/// Errors raised while building or parsing a [`Graph`](crate::Graph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge `{text}`")]
    Malformed { line: usize, text: String },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("endpoint {endpoint} out of range for n = {n}")]
    OutOfRange { endpoint: usize, n: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
}

/// Everything that can go wrong in the structural and colouring layers.
///
/// `Invariant` is special: it means a structural claim that should hold on
/// every valid input did not. The CLI maps it to its own exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has {0} vertices, need at least 3")]
    TooFewVertices(usize),
    #[error("clique order k = {k} not supported here (need {need})")]
    UnsupportedK { k: usize, need: &'static str },
    #[error("vertex {0} lies in no K_k")]
    VertexOutsideCliques(usize),
    #[error("edge {0}-{1} lies in no K_k")]
    EdgeOutsideCliques(usize, usize),
    #[error("density precondition fails: subgraph on {vertices:?} has density {density} >= {bound}")]
    TooDense {
        vertices: Vec<usize>,
        density: Rational,
        bound: Rational,
    },
    #[error("input is not a single K_k-component ({components} components)")]
    NotSingleComponent { components: usize },
    #[error("cannot classify K({vertex}): {reason}")]
    Classification { vertex: usize, reason: String },
    #[error("colouring is not proper: {0}")]
    Improper(String),
    #[error("colouring leaves a rainbow K_k on {0:?}")]
    Rainbow(Vec<usize>),
    #[error("badness {b} outside [0, {bound})")]
    BadnessOutOfRange { b: i64, bound: i64 },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("proof invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
