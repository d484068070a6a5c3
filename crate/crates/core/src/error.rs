use thiserror::Error;

/// Structural and I/O failures on graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyOrder,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("adjacency not symmetric between {u} and {v}")]
    Asymmetric { u: usize, v: usize },
    #[error("order {order} above the exhaustive-enumeration cap {cap}")]
    TooLargeForExhaustive { order: usize, cap: usize },
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("adjacency list parse error on line {line}: {reason}")]
    AdjacencyList { line: usize, reason: String },
}

/// Everything else the library can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("edge {u}-{v} is not an edge of the base graph")]
    EdgeNotInBase { u: usize, v: usize },
    #[error("edge {u}-{v} listed in both colour classes or in neither")]
    NotAPartition { u: usize, v: usize },
    #[error("block partition invalid: {0}")]
    BadPartition(String),
    #[error("colouring is not critical for t={t}, k={k}")]
    NotCritical { t: usize, k: usize },
    #[error("graph is not co-critical for t={t}, k={k}")]
    NotCocritical { t: usize, k: usize },
    #[error("search budget exceeded; result indeterminate after {nodes} nodes")]
    Indeterminate { nodes: u64 },
    #[error("{what} above cap: {value} > {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("construction parameters below threshold: n={n} < {threshold}")]
    BelowThreshold { n: usize, threshold: usize },
    #[error("layout does not match graph: {0}")]
    LayoutMismatch(String),
    #[error("no clique of size {size}")]
    NoClique { size: usize },
    #[error("percolation precondition violated: {0}")]
    Precondition(String),
    #[error("percolation invariant violated at iteration {iteration}: {detail}")]
    Invariant { iteration: usize, detail: String },
    #[error("percolation progress violated at iteration {iteration}: vertex {vertex}: {detail}")]
    Progress { iteration: usize, vertex: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
