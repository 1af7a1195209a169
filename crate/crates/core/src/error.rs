use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by graph construction, parsing and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop at vertex {0}: loops are not allowed")]
    Loop(VertexId),

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("{kind} index {index} out of range ({len} present)")]
    ElementOutOfRange {
        kind: &'static str,
        index: usize,
        len: usize,
    },

    #[error("instance exceeds size limit: {0}")]
    SizeLimit(String),

    #[error("search aborted after exploring {0} nodes")]
    SearchLimit(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
