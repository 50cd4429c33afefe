use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range (graph has {n} nodes)")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("self-loop on node {0} rejected")]
    SelfLoop(NodeId),

    #[error("edge weight must be finite and strictly positive, got {0}")]
    InvalidWeight(f64),

    #[error("unsupported dynamic on edge {{{u},{v}}}: weight {current} -> {requested} is not an insertion or decrease")]
    UnsupportedDynamic {
        u: NodeId,
        v: NodeId,
        current: f64,
        requested: f64,
    },

    #[error("duplicate edge {{{u},{v}}}")]
    DuplicateEdge { u: NodeId, v: NodeId },

    #[error("edge {{{u},{v}}} not present")]
    MissingEdge { u: NodeId, v: NodeId },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected: node {unreachable} is unreachable from node {from}")]
    Disconnected { from: NodeId, unreachable: NodeId },

    #[error("need at least {required} nodes, got {got}")]
    TooFewNodes { required: usize, got: usize },

    #[error("{0} must lie strictly inside (0, 1), got {1}")]
    OutOfUnitInterval(&'static str, f64),

    #[error("operation requires a {expected} graph")]
    WrongMode { expected: &'static str },

    #[error("malformed batch: {0}")]
    MalformedBatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
