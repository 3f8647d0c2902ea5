use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hlouvain::alpha::{AlphaController, AlphaPolicy};
use crate::hypercore::{contract, Hypergraph, Partition};
use crate::modularity::{hypergraph_modularity, ModularityState, ObjectiveConfig};

/// What happens once the blended search stalls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ending {
    /// Fix α = 1 and keep optimizing on supernodes.
    #[default]
    SupernodeDefault,
    /// As the default, then unroll to the original nodes and run α = 1 sweeps there.
    LocalOptOriginal,
}

pub const DEFAULT_MAX_SWEEPS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub objective: ObjectiveConfig,
    pub policy: AlphaPolicy,
    pub seed: u64,
    pub ending: Ending,
    pub max_sweeps_per_level: usize,
}

impl RunConfig {
    pub fn new(objective: ObjectiveConfig, policy: AlphaPolicy, seed: u64) -> Self {
        Self {
            objective,
            policy,
            seed,
            ending: Ending::SupernodeDefault,
            max_sweeps_per_level: DEFAULT_MAX_SWEEPS,
        }
    }

    pub fn with_ending(mut self, ending: Ending) -> Self {
        self.ending = ending;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Final communities of the original nodes, densely labelled.
    pub partition: Partition,
    /// Hypergraph modularity of `partition`, recomputed from scratch.
    pub q_h: f64,
    /// `(community_count, α)` at the start and at every change of α.
    pub alpha_trace: Vec<(usize, f64)>,
    /// Depth of the final supernode hierarchy (1 = no contraction kept).
    pub level_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOutcome {
    pub improved: bool,
    pub moves: usize,
    pub sweeps: usize,
    /// The sweep limit stopped the search before it converged.
    pub hit_limit: bool,
}

/// Local moving phase: permuted sweeps over all nodes of the level, each node
/// taking its best strictly positive move, until a full sweep moves nothing.
///
/// α is updated after every accepted move, so later evaluations in the same
/// sweep already see the new blend.
pub fn local_move_sweep<R: Rng>(
    state: &mut ModularityState,
    alpha: &mut AlphaController,
    rng: &mut R,
    max_sweeps: usize,
) -> SweepOutcome {
    let n = state.hypergraph().node_count();
    let mut order: Vec<usize> = (0..n).collect();
    let mut outcome = SweepOutcome::default();
    loop {
        if outcome.sweeps >= max_sweeps {
            log::warn!("sweep limit {max_sweeps} reached; keeping current partition");
            outcome.hit_limit = true;
            break;
        }
        outcome.sweeps += 1;
        order.shuffle(rng);
        let mut moved = false;
        for &v in &order {
            if let Some((target, _)) = state.best_move(v, alpha.value()) {
                state.move_node(v, target);
                alpha.after_move(state.community_count());
                outcome.moves += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    outcome.improved = outcome.moves > 0;
    outcome
}

/// One hierarchy level: its state plus the original-node -> level-node map.
#[derive(Debug, Clone)]
struct Level {
    state: ModularityState,
    to_level: Vec<usize>,
}

impl Level {
    fn original_labels(&self) -> Vec<usize> {
        self.to_level
            .iter()
            .map(|&u| self.state.partition().community(u))
            .collect()
    }
}

/// h-Louvain: multilevel local moving on the blended objective with the α
/// schedule of `cfg.policy`.
pub fn h_louvain(hypergraph: &Hypergraph, cfg: &RunConfig) -> Result<RunResult> {
    let alpha = AlphaController::scheduled(cfg.policy, hypergraph.node_count());
    optimize(hypergraph, &cfg.objective, alpha, cfg.seed, cfg.ending, cfg.max_sweeps_per_level)
}

/// Multilevel search with an arbitrary α controller. With a pinned controller
/// the search stops at the first level without moves.
pub fn optimize(
    hypergraph: &Hypergraph,
    objective: &ObjectiveConfig,
    mut alpha: AlphaController,
    seed: u64,
    ending: Ending,
    max_sweeps: usize,
) -> Result<RunResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Arc::new(hypergraph.clone());
    let n = base.node_count();
    let mut level = Level {
        state: ModularityState::singletons(base.clone(), objective)?,
        to_level: (0..n).collect(),
    };
    let mut previous: Option<Level> = None;
    let mut depth = 1;

    let mut modified = true;
    while modified {
        let outcome = local_move_sweep(&mut level.state, &mut alpha, &mut rng, max_sweeps);
        modified = outcome.improved;
        if modified {
            let (contracted, mapping) = contract(level.state.hypergraph(), level.state.partition());
            let to_level = level
                .to_level
                .iter()
                .map(|&u| mapping[&level.state.partition().community(u)])
                .collect();
            let next = Level {
                state: ModularityState::singletons(Arc::new(contracted), objective)?,
                to_level,
            };
            previous = Some(std::mem::replace(&mut level, next));
            depth += 1;
        } else if !alpha.is_pinned() && alpha.value() < 1.0 {
            alpha.force_one(level.state.community_count());
            if let Some(prev) = previous.take() {
                level = prev;
                depth -= 1;
            }
            modified = true;
        }
    }

    let mut labels = level.original_labels();
    if ending == Ending::LocalOptOriginal {
        let mut state = ModularityState::new(base.clone(), &labels, objective)?;
        let mut final_alpha = AlphaController::pinned(1.0, n);
        local_move_sweep(&mut state, &mut final_alpha, &mut rng, max_sweeps);
        labels = state.partition().labels();
    }

    let partition = Partition::from_labels(&labels, base.degrees())?;
    let q_h = hypergraph_modularity(&base, &partition, objective)?;
    Ok(RunResult {
        partition,
        q_h,
        alpha_trace: alpha.trace().to_vec(),
        level_count: depth,
    })
}
