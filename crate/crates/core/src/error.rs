use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node index {index} out of range for graph with {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node {node} is isolated (zero degree); normalized quantities are undefined")]
    IsolatedVertex { node: usize },

    #[error("graph is disconnected ({components} components); draw or cluster each component separately")]
    Disconnected { components: usize },

    #[error("block {block} has zero volume")]
    ZeroVolume { block: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("iteration failed to converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("matrix is rank deficient: {0}")]
    RankDeficient(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
