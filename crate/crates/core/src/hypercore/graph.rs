use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hypercore::{Hypergraph, Partition};

/// How hyperedge weight is spread over the pairs of its 2-section clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoSectionScheme {
    /// Each pair gets `w(e) / C(|e|, 2)`; total weight is preserved.
    #[default]
    TotalWeight,
    /// Each pair gets `w(e) / (|e| - 1)`; node degrees are preserved.
    DegreePreserving,
}

/// Undirected weighted graph with optional loops.
///
/// A loop of weight `w` counts `2w` toward its node's degree and `w` toward
/// the total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    neighbours: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
    degree: Vec<f64>,
    total_weight: f64,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, weight)` triples; coincident pairs are summed.
    pub fn from_pairs<I>(node_count: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in pairs {
            let key = if u <= v { (u, v) } else { (v, u) };
            *acc.entry(key).or_insert(0.0) += w;
        }
        let mut neighbours = vec![Vec::new(); node_count];
        let mut loops = vec![0.0; node_count];
        let mut degree = vec![0.0; node_count];
        let mut total_weight = 0.0;
        for (&(u, v), &w) in &acc {
            if w <= 0.0 {
                continue;
            }
            total_weight += w;
            if u == v {
                loops[u] += w;
                degree[u] += 2.0 * w;
            } else {
                neighbours[u].push((v, w));
                neighbours[v].push((u, w));
                degree[u] += w;
                degree[v] += w;
            }
        }
        for list in &mut neighbours {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Self {
            neighbours,
            loops,
            degree,
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.degree.len()
    }

    /// Adjacent nodes with pair weights, excluding the loop.
    pub fn neighbours(&self, v: usize) -> &[(usize, f64)] {
        &self.neighbours[v]
    }

    pub fn loop_weight(&self, v: usize) -> f64 {
        self.loops[v]
    }

    /// Weighted degree, loops counted twice.
    pub fn degree(&self, v: usize) -> f64 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    /// Sum of all pair and loop weights.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Weight of pair `(u, v)`, zero if absent.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return self.loops[u];
        }
        self.neighbours[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.neighbours[u][i].1)
            .unwrap_or(0.0)
    }

    /// Every pair once (`u <= v`), including loops.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let links = self.neighbours.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        });
        let loops = self
            .loops
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(u, &w)| (u, u, w));
        links.chain(loops)
    }

    /// Aggregates each community of `partition` into a single node.
    pub fn contract(&self, partition: &Partition) -> (WeightedGraph, Vec<usize>) {
        let mut ids: Vec<usize> = partition.assignment().to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut mapping = vec![usize::MAX; self.node_count()];
        for (s, &c) in ids.iter().enumerate() {
            mapping[c] = s;
        }
        let pairs = self.pairs().map(|(u, v, w)| {
            (
                mapping[partition.community(u)],
                mapping[partition.community(v)],
                w,
            )
        });
        let graph = WeightedGraph::from_pairs(ids.len(), pairs.collect::<Vec<_>>());
        let node_map = (0..self.node_count())
            .map(|v| mapping[partition.community(v)])
            .collect();
        (graph, node_map)
    }
}

/// The 2-section (clique expansion) of `hypergraph`.
///
/// Every unordered index pair of an edge's member list receives a share of
/// the edge weight; repeated members of a multiset edge produce loops.
pub fn two_section(hypergraph: &Hypergraph, scheme: TwoSectionScheme) -> WeightedGraph {
    let mut pairs = Vec::new();
    for edge in hypergraph.edges() {
        let d = edge.size();
        let share = match scheme {
            TwoSectionScheme::TotalWeight => edge.weight() / (d * (d - 1) / 2) as f64,
            TwoSectionScheme::DegreePreserving => edge.weight() / (d - 1) as f64,
        };
        let members = edge.members();
        for i in 0..d {
            for j in i + 1..d {
                pairs.push((members[i], members[j], share));
            }
        }
    }
    WeightedGraph::from_pairs(hypergraph.node_count(), pairs)
}
