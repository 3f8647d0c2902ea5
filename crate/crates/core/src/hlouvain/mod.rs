//! Multilevel local moving on the blended objective.

mod alpha;
mod graph_louvain;
mod optimizer;

pub use alpha::{update_alpha, AlphaController, AlphaPolicy};
pub use graph_louvain::{louvain_graph, GraphRunResult};
pub use optimizer::{
    h_louvain, local_move_sweep, optimize, Ending, RunConfig, RunResult, SweepOutcome, DEFAULT_MAX_SWEEPS,
};
