use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} repeated in cycle")]
    RepeatedVertex(usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("underlying graphs differ; use is_switching_isomorphic instead")]
    UnderlyingGraphsDiffer,
    #[error("size limit: n = {n} exceeds the configured limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,
    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not equitable: block ({0}, {1}) has non-constant row sums")]
    NotEquitable(usize, usize),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid forbidden-configuration spec: {0}")]
    InvalidSpec(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
