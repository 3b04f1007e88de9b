//! Mining of top-t overlapping cohesive subgraphs with a minimum-degree
//! guarantee.
//!
//! A graph is transformed into a weighted link graph (one node per edge;
//! the skein variant keeps only adjacencies closed by a triangle) and the
//! occurrence-discounted link-density objective is maximized under the
//! constraint that every returned subgraph translates back to a connected
//! node set of minimum degree at least `k`. Three heuristics are provided
//! (peeling, density-guided peeling, and seed expansion around max-flow
//! densest subgraphs) next to an exhaustive oracle for small instances.

pub mod density;
pub mod error;
pub mod flow;
pub mod graph;
pub mod linkgraph;
pub mod miners;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};
pub use linkgraph::{
    build_link_skein, build_link_space, closed_neighborhood_similarity, EffectiveWeights,
    LinkGraph, LinkMode, LinkSubgraph,
};
