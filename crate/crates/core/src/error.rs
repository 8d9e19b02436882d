use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Best iterate of a solve that ran out of iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveFailure {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: u64 },

    #[error("node index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error(
        "solver did not converge after {} iterations (residual {:.3e})",
        .0.iterations,
        .0.residual
    )]
    NoConvergence(Box<SolveFailure>),

    #[error("community {community}: {source}")]
    Community {
        community: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("iteration {iteration}: {source}")]
    Iteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate cover: every community has zero entropy")]
    DegenerateCover,

    #[error("dense oracle refused: {0}")]
    Oversize(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
