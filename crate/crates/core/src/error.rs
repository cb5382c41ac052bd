use thiserror::Error;

use crate::smig::ForbiddenSubgraph;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("node {node} is out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} - {1}")]
    DuplicateEdge(usize, usize),

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),

    #[error("arcs contain a directed cycle through node {0}")]
    Cycle(usize),

    #[error("nodes {0} and {1} carry both a directed and an undirected edge")]
    ConflictingEdge(usize, usize),

    #[error("graph is not a SMIG: edge {0} - {1} lies in no simplex")]
    NotSmig(usize, usize),

    #[error("graph is not trivially perfect: induced {0}")]
    NotTriviallyPerfect(ForbiddenSubgraph),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid clique cover: {0}")]
    InvalidCover(String),

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn check_capacity(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::Capacity {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
