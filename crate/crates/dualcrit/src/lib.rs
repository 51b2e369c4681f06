//! Decision procedures for dual-critical multigraphs.
//!
//! A connected multigraph is *dual-critical* when it admits an acyclic
//! orientation in which every vertex except the unique source has odd
//! indegree; equivalently, an ordering of the vertices where each vertex
//! after the first sends an odd number of edges back to its predecessors.
//!
//! The crate provides:
//! * exact subset-DP deciders with verifiable ordering certificates,
//! * a randomized determinant test over GF(2^64) with an exhaustive
//!   small-graph audit harness,
//! * good k-partitions: recursive and oracle deciders, a greedy maximal
//!   partitioner, left alignment, improvement rules, and a kernelization
//!   driving an FPT decision,
//! * equivalent characterizations for cubic graphs,
//! * rotation-system planarity utilities relating dual-criticality and
//!   factor-criticality across planar duals.

pub mod corpus;
pub mod cubic;
pub mod enumerate;
pub mod exact;
pub mod gen;
pub mod gf64;
pub mod graph;
pub mod io;
pub mod kdc;
pub mod planar;
pub mod szegedy;

pub use graph::{MultiGraph, OrderedPartition, VertexSet};

/// Unified error type for precondition and input failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("edge {edge} out of range for graph with {m} edges")]
    InvalidEdge { edge: usize, m: usize },
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("graph has {n} vertices, exceeding the limit {limit} for {what}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("graph must be connected")]
    Disconnected,
    #[error("vertex sets must be disjoint")]
    OverlappingSets,
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge {0} lies in the spanning tree")]
    EdgeInTree(usize),
    #[error("rewrite precondition failed: {0}")]
    RewritePrecondition(String),
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("not a cubic instance: {0}")]
    NotCubicInstance(String),
    #[error("rotation system does not describe a sphere embedding: V - E + F = {n} - {m} + {f} != 2")]
    NonPlanar { n: usize, m: usize, f: usize },
    #[error("invalid rotation system: {0}")]
    BadRotation(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
