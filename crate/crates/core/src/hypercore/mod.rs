//! Hypergraph and partition data model, 2-section projection and contraction.

mod graph;
mod hypergraph;
pub mod io;
mod partition;

pub use graph::{two_section, TwoSectionScheme, WeightedGraph};
pub use hypergraph::{build_hypergraph, contract, Hyperedge, Hypergraph, HypergraphBuilder, NodeIndex};
pub use partition::Partition;
