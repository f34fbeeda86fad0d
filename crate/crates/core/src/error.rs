use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance exceeds oracle cap: {0}")]
    CapExceeded(String),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("improper coloring: {0}")]
    ImproperColoring(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("requirement off segment: {0}")]
    OffSegment(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no crossing pair found: {0}")]
    NoCrossingPair(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
