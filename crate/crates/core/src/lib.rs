//! Disjoint dijoin packing through nowhere-zero flows and arborescence packing,
//! with exact cut oracles for checking every intermediate claim.
//!
//! The main entry point is [`dijoin::pack_dijoins`]. Everything it produces is
//! re-verified by an independent checker before it is returned.

pub mod arborescence;
pub mod cuts;
pub mod dijoin;
pub mod error;
pub mod flows;
pub mod graph;
pub mod limits;
pub mod maxflow;
pub mod ratio;
pub mod sco;

pub use error::{Error, Result};
pub use graph::{
    ArcId, ArcSet, ArcWeightVector, BidirectedGraph, Digraph, EdgeId, HostId, UndirGraph,
    VertexId,
};
pub use ratio::FlowRatio;
