//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated tokens, found {found}")]
    MalformedEdgeLine { line: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("similarity is undefined for identical endpoints (node {0})")]
    IdenticalEndpoints(u32),

    #[error("operation requires a non-empty set")]
    EmptySet,

    #[error("link node id {0} is out of range")]
    InvalidLinkNode(u32),

    #[error("subgraphs belong to different link graphs")]
    MismatchedLinkGraph,

    #[error("no {k}-core exists; maximum coreness of the graph is {max_coreness}")]
    Infeasible { k: u32, max_coreness: u32 },

    #[error("graph has {nodes} nodes, oracle limit is {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },

    #[error("candidate limit {limit} exceeded; {found} feasible candidates found so far")]
    CandidateOverflow { limit: usize, found: usize },

    #[error("density bound requires a positive density, got {0}")]
    DensityNotPositive(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid link graph construction: {0}")]
    Construction(String),
}
