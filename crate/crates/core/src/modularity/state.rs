use std::sync::Arc;

use crate::error::Result;
use crate::hypercore::{two_section, Hypergraph, Partition, WeightedGraph};
use crate::modularity::evaluate::{ObjectiveConfig, ObjectiveTables};

/// Incremental bookkeeping for the blended objective
/// `q(A, α) = α·q_H(A) + (1 − α)·q_G(A)` over one hypergraph level.
///
/// Caches per community: hypergraph volume (inside the partition), 2-section
/// volume and internal 2-section weight. Caches per hyperedge: how many members
/// fall in each touched community.
#[derive(Debug, Clone)]
pub struct ModularityState {
    hypergraph: Arc<Hypergraph>,
    graph: Arc<WeightedGraph>,
    tables: Arc<ObjectiveTables>,
    resolution: f64,
    partition: Partition,
    graph_volume: Vec<f64>,
    graph_internal: Vec<f64>,
    edge_counts: Vec<Vec<(usize, usize)>>,
    link: Vec<f64>,
    touched: Vec<usize>,
}

impl ModularityState {
    /// State for `hypergraph` with every node in its own community.
    pub fn singletons(hypergraph: Arc<Hypergraph>, cfg: &ObjectiveConfig) -> Result<Self> {
        let labels: Vec<usize> = (0..hypergraph.node_count()).collect();
        Self::new(hypergraph, &labels, cfg)
    }

    /// State for `hypergraph` with the given community labels (relabelled densely).
    pub fn new(hypergraph: Arc<Hypergraph>, labels: &[usize], cfg: &ObjectiveConfig) -> Result<Self> {
        let graph = Arc::new(two_section(&hypergraph, cfg.scheme));
        Self::with_graph(hypergraph, graph, labels, cfg)
    }

    /// Like [`ModularityState::new`] but reusing an already built 2-section.
    pub fn with_graph(
        hypergraph: Arc<Hypergraph>,
        graph: Arc<WeightedGraph>,
        labels: &[usize],
        cfg: &ObjectiveConfig,
    ) -> Result<Self> {
        let tables = Arc::new(ObjectiveTables::new(&hypergraph, cfg)?);
        let partition = Partition::from_labels(labels, hypergraph.degrees())?;
        let n = hypergraph.node_count();

        let mut graph_volume = vec![0.0; n];
        let mut graph_internal = vec![0.0; n];
        for v in 0..n {
            graph_volume[partition.community(v)] += graph.degree(v);
        }
        for (u, v, w) in graph.pairs() {
            if partition.community(u) == partition.community(v) {
                graph_internal[partition.community(u)] += w;
            }
        }
        let edge_counts = hypergraph
            .edges()
            .iter()
            .map(|edge| {
                let mut counts: Vec<(usize, usize)> = Vec::new();
                for (v, m) in edge.distinct() {
                    let c = partition.community(v);
                    match counts.iter_mut().find(|(x, _)| *x == c) {
                        Some(entry) => entry.1 += m,
                        None => counts.push((c, m)),
                    }
                }
                counts
            })
            .collect();

        Ok(Self {
            hypergraph,
            graph,
            tables,
            resolution: cfg.resolution,
            partition,
            graph_volume,
            graph_internal,
            edge_counts,
            link: vec![0.0; n],
            touched: Vec::new(),
        })
    }

    pub fn hypergraph(&self) -> &Arc<Hypergraph> {
        &self.hypergraph
    }

    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn community_count(&self) -> usize {
        self.partition.community_count()
    }

    /// 2-section modularity from the caches.
    pub fn q_graph(&self) -> f64 {
        let total = self.graph.total_weight();
        let vol = 2.0 * total;
        let mut ec = 0.0;
        let mut dt = 0.0;
        for c in self.partition.community_ids() {
            ec += self.graph_internal[c];
            dt += (self.graph_volume[c] / vol).powi(2);
        }
        ec / total - self.resolution * dt
    }

    /// Hypergraph modularity from the caches.
    pub fn q_hypergraph(&self) -> f64 {
        let mut ec = 0.0;
        for (edge, counts) in self.hypergraph.edges().iter().zip(&self.edge_counts) {
            let top = counts.iter().map(|&(_, k)| k).max().unwrap_or(0);
            ec += edge.weight() * self.tables.eta(top, edge.size());
        }
        let dt: f64 = self
            .partition
            .community_ids()
            .map(|c| self.tables.tax(self.partition.volume(c)))
            .sum();
        (ec - dt) / self.tables.total_weight
    }

    pub fn q_blended(&self, alpha: f64) -> f64 {
        blend(alpha, || self.q_graph(), || self.q_hypergraph())
    }

    /// Communities holding another member of some hyperedge incident to `v`,
    /// ascending, excluding `v`'s own community.
    pub fn neighbour_communities(&self, v: usize) -> Vec<usize> {
        let own = self.partition.community(v);
        let mut out: Vec<usize> = self
            .hypergraph
            .incident(v)
            .iter()
            .flat_map(|&(e, _)| self.edge_counts[e].iter().map(|&(c, _)| c))
            .filter(|&c| c != own)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn link_weights(&self, v: usize, a: usize, b: usize) -> (f64, f64) {
        let mut to_a = 0.0;
        let mut to_b = 0.0;
        for &(u, w) in self.graph.neighbours(v) {
            let c = self.partition.community(u);
            if c == a {
                to_a += w;
            } else if c == b {
                to_b += w;
            }
        }
        (to_a, to_b)
    }

    fn graph_delta(&self, v: usize, target: usize, to_source: f64, to_target: f64) -> f64 {
        let source = self.partition.community(v);
        let total = self.graph.total_weight();
        let d = self.graph.degree(v);
        let vol_a = self.graph_volume[source];
        let vol_b = self.graph_volume[target];
        let ec = (to_target - to_source) / total;
        let dt = 2.0 * d * (vol_b - vol_a + d) / (4.0 * total * total);
        ec - self.resolution * dt
    }

    /// Change of q_G when `v` moves to `target`.
    pub fn delta_graph(&self, v: usize, target: usize) -> f64 {
        let source = self.partition.community(v);
        if source == target {
            return 0.0;
        }
        let (to_a, to_b) = self.link_weights(v, source, target);
        self.graph_delta(v, target, to_a, to_b)
    }

    /// Change of q_H when `v` moves to `target`.
    pub fn delta_hypergraph(&self, v: usize, target: usize) -> f64 {
        let source = self.partition.community(v);
        if source == target {
            return 0.0;
        }
        let mut ec = 0.0;
        for &(e, m) in self.hypergraph.incident(v) {
            let edge = self.hypergraph.edge(e);
            let counts = &self.edge_counts[e];
            let before = counts.iter().map(|&(_, k)| k).max().unwrap_or(0);
            let mut after = 0;
            let mut target_seen = false;
            for &(c, k) in counts {
                let k = if c == source {
                    k - m
                } else if c == target {
                    target_seen = true;
                    k + m
                } else {
                    k
                };
                after = after.max(k);
            }
            if !target_seen {
                after = after.max(m);
            }
            if after != before {
                let d = edge.size();
                ec += edge.weight() * (self.tables.eta(after, d) - self.tables.eta(before, d));
            }
        }
        let d = self.partition.node_weight(v);
        let vol_a = self.partition.volume(source);
        let vol_b = self.partition.volume(target);
        let dt = self.tables.tax(vol_a - d) + self.tables.tax(vol_b + d)
            - self.tables.tax(vol_a)
            - self.tables.tax(vol_b);
        (ec - dt) / self.tables.total_weight
    }

    /// `q(A′, α) − q(A, α)` for `A′` = `A` with `v` moved to `target`.
    pub fn delta_move(&self, v: usize, target: usize, alpha: f64) -> f64 {
        blend(
            alpha,
            || self.delta_graph(v, target),
            || self.delta_hypergraph(v, target),
        )
    }

    /// Best strictly positive move for `v` among its neighbouring communities;
    /// ties keep the lowest community id.
    pub fn best_move(&mut self, v: usize, alpha: f64) -> Option<(usize, f64)> {
        let source = self.partition.community(v);
        let candidates = self.neighbour_communities(v);
        if candidates.is_empty() {
            return None;
        }
        let need_graph = alpha < 1.0;
        if need_graph {
            for &(u, w) in self.graph.neighbours(v) {
                let c = self.partition.community(u);
                if self.link[c] == 0.0 {
                    self.touched.push(c);
                }
                self.link[c] += w;
            }
        }
        let mut best: Option<(usize, f64)> = None;
        let mut best_delta = 0.0;
        for &target in &candidates {
            let delta = blend(
                alpha,
                || self.graph_delta(v, target, self.link[source], self.link[target]),
                || self.delta_hypergraph(v, target),
            );
            if delta > best_delta {
                best_delta = delta;
                best = Some((target, delta));
            }
        }
        for c in self.touched.drain(..) {
            self.link[c] = 0.0;
        }
        best
    }

    /// Moves `v` to `target`, updating every cache.
    pub fn move_node(&mut self, v: usize, target: usize) {
        let source = self.partition.community(v);
        if source == target {
            return;
        }
        for &(e, m) in self.hypergraph.incident(v) {
            let counts = &mut self.edge_counts[e];
            if let Some(i) = counts.iter().position(|&(c, _)| c == source) {
                counts[i].1 -= m;
                if counts[i].1 == 0 {
                    counts.swap_remove(i);
                }
            }
            match counts.iter_mut().find(|(c, _)| *c == target) {
                Some(entry) => entry.1 += m,
                None => counts.push((target, m)),
            }
        }
        let (to_a, to_b) = self.link_weights(v, source, target);
        let self_loop = self.graph.loop_weight(v);
        let d = self.graph.degree(v);
        self.graph_internal[source] -= to_a + self_loop;
        self.graph_internal[target] += to_b + self_loop;
        self.graph_volume[source] -= d;
        self.graph_volume[target] += d;
        self.partition.move_node(v, target);
        if self.partition.size(source) == 0 {
            self.graph_volume[source] = 0.0;
            self.graph_internal[source] = 0.0;
        }
    }

    /// Compares every cache with a from-scratch rebuild.
    pub fn is_consistent(&self, tolerance: f64) -> bool {
        if !self.partition.is_consistent(tolerance) {
            return false;
        }
        let n = self.hypergraph.node_count();
        let mut volume = vec![0.0; n];
        let mut internal = vec![0.0; n];
        for v in 0..n {
            volume[self.partition.community(v)] += self.graph.degree(v);
        }
        for (u, v, w) in self.graph.pairs() {
            if self.partition.community(u) == self.partition.community(v) {
                internal[self.partition.community(u)] += w;
            }
        }
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tolerance);
        if !close(&volume, &self.graph_volume) || !close(&internal, &self.graph_internal) {
            return false;
        }
        self.hypergraph.edges().iter().zip(&self.edge_counts).all(|(edge, counts)| {
            let mut expected: Vec<(usize, usize)> = Vec::new();
            for (v, m) in edge.distinct() {
                let c = self.partition.community(v);
                match expected.iter_mut().find(|(x, _)| *x == c) {
                    Some(entry) => entry.1 += m,
                    None => expected.push((c, m)),
                }
            }
            let mut actual = counts.clone();
            expected.sort_unstable();
            actual.sort_unstable();
            expected == actual
        })
    }
}

#[inline]
fn blend(alpha: f64, graph: impl FnOnce() -> f64, hyper: impl FnOnce() -> f64) -> f64 {
    if alpha <= 0.0 {
        graph()
    } else if alpha >= 1.0 {
        hyper()
    } else {
        (1.0 - alpha) * graph() + alpha * hyper()
    }
}
