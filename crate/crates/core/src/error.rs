use alloc::string::String;

use crate::thread::Timestamp;

/// What is wrong with a thread that failed validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreadDefect {
    #[error("thread has no posts")]
    Empty,
    #[error("post with empty id")]
    EmptyPostId,
    #[error("duplicate post id {0:?}")]
    DuplicatePostId(String),
    #[error("post {post:?} replies to unknown parent {parent:?}")]
    OrphanParent { post: String, parent: String },
    #[error("no root post (every post has a parent)")]
    NoRoot,
    #[error("more than one root post ({0:?} and {1:?})")]
    MultipleRoots(String, String),
    #[error("post {0:?} is not connected to the root post")]
    Unreachable(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid thread {thread_id:?}: {defect}")]
    InvalidThread {
        thread_id: String,
        defect: ThreadDefect,
    },
    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),
    #[error("dyad needs two distinct nodes, got {0} twice")]
    InvalidPair(usize),
    #[error("node {node} out of range for graph with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("lifetime ends before it starts ({t0} > {t1})")]
    InvalidLifetime { t0: Timestamp, t1: Timestamp },
    #[error("edge-free class {0} has no completion time")]
    EdgeFreeClass(String),
    #[error("invalid bin specification: {0}")]
    InvalidBins(String),
    #[error("unknown class name {0:?}")]
    UnknownClass(String),
}
