use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..=32")]
    VertexCount(usize),
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("bit pattern {bits:#x} does not fit in width {width}")]
    BitsOutOfRange { bits: u64, width: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotSubspace,
    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge { what: &'static str, max: usize, n: usize },
    #[error("invalid bipartition: {0}")]
    Partition(String),
    #[error("global sign needs a sum over 2^{0} correlation elements; deferred")]
    AlphaDeferred(usize),
    #[error("correlation state terms collide at {0}: subgroup meets the X-chain group")]
    TermCollision(String),
    #[error("label {0} is not in the A-to-B correlation group")]
    LabelOutsideGroup(String),
    #[error("graph is not Z-balanced")]
    NotBalanced,
    #[error("Alice's Schmidt vectors are superpositions: {0} is nonempty")]
    SuperposedCodewords(&'static str),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
