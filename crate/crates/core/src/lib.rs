//! Exact cycle-matroid calculus on finite multigraphs.
//!
//! The crate revolves around the normalized rank function of a graph's cycle
//! matroid and the structures built on top of it: quotient profiles under
//! edge colorings, local statistics of rooted balls, invasion spanning
//! forests with their token ledger, and rotation-system planar duality.
//! Every rank-like quantity is an exact rational; randomness is always
//! seeded; edge indices are the universal currency between modules.

#![forbid(unsafe_code)]

pub mod forest;
pub mod graph;
pub mod graphgen;
pub mod local;
pub mod planar;
pub mod quotient;
pub mod rank;
pub mod ratio;

pub use graph::{
    components, contract, parse_edge_list, serialize_edge_list, BoundarySpec, Components,
    EdgePartition, EdgeSet, GraphError, MultiGraph,
};
pub use ratio::{format_ratio, parse_ratio, rat, rat_int, ratio_to_f64, Ratio};
