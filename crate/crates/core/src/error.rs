use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("no vertex with id {0}")]
    InvalidVertex(u32),
    #[error("no clique with id {0}")]
    InvalidClique(u32),
    #[error("graph carries no clique registry")]
    RegistryUnavailable,
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("clique record {0} is not a (d+1)-clique of the graph")]
    MalformedClique(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("vertex {vertex} has degree {degree}, need at least {needed}")]
    DegreeTooSmall {
        vertex: u32,
        degree: usize,
        needed: usize,
    },
    #[error("degree {degree} is outside the law's support (k >= {min})")]
    DegreeOutOfRange { degree: u64, min: u64 },
    #[error("no degree sample at or above k_min = {0}")]
    NoSamples(usize),
    #[error("graph has {vertices} vertices, above the exact path-length limit {limit}")]
    TooLargeForExact { vertices: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("empty run list")]
    EmptyRuns,
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
