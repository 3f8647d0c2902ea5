use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{Partition, WeightedGraph};
use crate::modularity::graph_modularity;

/// Result of a plain Louvain run on a weighted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphRunResult {
    pub partition: Partition,
    pub q_g: f64,
    pub level_count: usize,
}

struct GraphLevel {
    graph: WeightedGraph,
    partition: Partition,
    internal: Vec<f64>,
    link: Vec<f64>,
    touched: Vec<usize>,
}

impl GraphLevel {
    fn new(graph: WeightedGraph) -> Self {
        let n = graph.node_count();
        let partition = Partition::singletons(graph.degrees());
        let internal = (0..n).map(|v| graph.loop_weight(v)).collect();
        Self {
            graph,
            partition,
            internal,
            link: vec![0.0; n],
            touched: Vec::new(),
        }
    }

    fn best_move(&mut self, v: usize, resolution: f64) -> Option<usize> {
        let source = self.partition.community(v);
        let mut candidates = Vec::new();
        for &(u, w) in self.graph.neighbours(v) {
            let c = self.partition.community(u);
            if self.link[c] == 0.0 {
                self.touched.push(c);
            }
            self.link[c] += w;
            if c != source {
                candidates.push(c);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        let total = self.graph.total_weight();
        let d = self.graph.degree(v);
        let vol_a = self.partition.volume(source);
        let mut best = None;
        let mut best_delta = 0.0;
        for &target in &candidates {
            let ec = (self.link[target] - self.link[source]) / total;
            let dt = 2.0 * d * (self.partition.volume(target) - vol_a + d) / (4.0 * total * total);
            let delta = ec - resolution * dt;
            if delta > best_delta {
                best_delta = delta;
                best = Some(target);
            }
        }
        for c in self.touched.drain(..) {
            self.link[c] = 0.0;
        }
        best
    }

    fn move_node(&mut self, v: usize, target: usize) {
        let source = self.partition.community(v);
        let mut to_a = 0.0;
        let mut to_b = 0.0;
        for &(u, w) in self.graph.neighbours(v) {
            let c = self.partition.community(u);
            if c == source {
                to_a += w;
            } else if c == target {
                to_b += w;
            }
        }
        let own = self.graph.loop_weight(v);
        self.internal[source] -= to_a + own;
        self.internal[target] += to_b + own;
        self.partition.move_node(v, target);
        if self.partition.size(source) == 0 {
            self.internal[source] = 0.0;
        }
    }
}

/// Classic two-phase Louvain on a weighted graph, with the same sweep order,
/// candidate set and tie rule as [`crate::hlouvain::h_louvain`] at α = 0.
pub fn louvain_graph(graph: &WeightedGraph, seed: u64, resolution: f64) -> Result<GraphRunResult> {
    if graph.total_weight() <= 0.0 {
        return Err(Error::EmptyHypergraph);
    }
    if !(resolution > 0.0) {
        return Err(Error::InvalidParameter(format!("resolution must be positive, got {resolution}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.node_count();
    let mut level = GraphLevel::new(graph.clone());
    let mut to_level: Vec<usize> = (0..n).collect();
    let mut depth = 1;
    loop {
        let mut order: Vec<usize> = (0..level.graph.node_count()).collect();
        let mut moves = 0;
        loop {
            order.shuffle(&mut rng);
            let mut moved = false;
            for &v in &order {
                if let Some(target) = level.best_move(v, resolution) {
                    level.move_node(v, target);
                    moves += 1;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        if moves == 0 {
            break;
        }
        let (contracted, node_map) = level.graph.contract(&level.partition);
        for slot in to_level.iter_mut() {
            *slot = node_map[*slot];
        }
        level = GraphLevel::new(contracted);
        depth += 1;
    }
    let labels: Vec<usize> = to_level.iter().map(|&u| level.partition.community(u)).collect();
    let partition = Partition::from_labels(&labels, graph.degrees())?;
    let q_g = graph_modularity(graph, &partition, resolution)?;
    Ok(GraphRunResult {
        partition,
        q_g,
        level_count: depth,
    })
}
