use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("modularity undefined: graph has zero total edge weight")]
    EmptyGraph,

    #[error("invalid weight {weight} on pair ({u}, {v})")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("clustering covers {found} vertices but graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("clustering has {found} communities, at most {max} allowed here")]
    TooManyCommunities { found: usize, max: usize },

    #[error("{what}: n = {n} exceeds the limit of {limit}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph must be simple and unweighted: {0}")]
    NotSimple(String),

    #[error("trivial Max-Cut instance: k = {k} <= m/2 + 2 with m = {m} (local-search cut of size {greedy_cut} exists)")]
    TrivialInstance { k: u64, m: u64, greedy_cut: u64 },

    #[error("reduction carries no certificate")]
    MissingCertificate,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dataset {name} not found at {path}")]
    MissingDataset { name: String, path: String },

    #[error("dataset {name}: expected n = {expected_n}, m = {expected_m}, loaded n = {n}, m = {m}")]
    DatasetMismatch {
        name: String,
        expected_n: usize,
        expected_m: usize,
        n: usize,
        m: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
