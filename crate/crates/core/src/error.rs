use thiserror::Error;

use crate::cuts::CutCertificate;
use crate::graph::{ArcId, EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("graph too large: {0}")]
    TooLarge(String),

    #[error("arc set or weight vector belongs to a different host graph")]
    HostMismatch,

    #[error("arc id {0} is not an arc of the host graph")]
    ForeignArc(ArcId),

    #[error("weight {value} on arc {arc} is outside 0..=2^31-1")]
    BadWeight { arc: ArcId, value: i64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("the digraph is strongly connected and has no dicut")]
    NoDicut,

    #[error("minimum dicut is {0}, at least 2 is required")]
    TauTooSmall(i64),

    #[error("graph is not 2-edge-connected{}", match .edge { Some(e) => format!(" (bridge {e})"), None => " (disconnected)".to_string() })]
    NotBridgeless {
        edge: Option<EdgeId>,
        side: Vec<VertexId>,
    },

    #[error("rooted connectivity {value} at root {root} is below the requested {requested}")]
    InsufficientConnectivity {
        root: VertexId,
        requested: i64,
        value: i64,
        witness: Box<CutCertificate>,
    },

    #[error("set does not pick exactly one of e+ / e- for edge {0}")]
    NotOrientation(EdgeId),

    #[error("flow check failed: {0}")]
    InvalidFlow(String),

    #[error("invalid flow ratio: {0}")]
    InvalidRatio(String),

    #[error("input is not a member of {family}: {reason}")]
    NonMember { family: String, reason: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
