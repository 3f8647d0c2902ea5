//! Graph and hypergraph modularity, the τ-family of η weights and exact
//! incremental deltas for single-node moves.

mod composition;
mod eta;
mod evaluate;
mod state;

pub use composition::{edge_composition, CompositionRow, CompositionTable};
pub use eta::{eta_from_tau, majority_threshold, EtaProvenance, EtaWeights, TauChoice};
pub use evaluate::{binom_pmf, graph_modularity, hypergraph_modularity, ObjectiveConfig};
pub use state::ModularityState;
