use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypercore::Partition;

/// A weighted hyperedge. Members form a multiset, kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    members: Vec<usize>,
    weight: f64,
}

impl Hyperedge {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Edge size, counting repeated members.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Distinct members with their multiplicity, in ascending node order.
    pub fn distinct(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            let node = *self.members.get(i)?;
            let start = i;
            while i < self.members.len() && self.members[i] == node {
                i += 1;
            }
            Some((node, i - start))
        })
    }
}

/// Hypergraph with multiset hyperedges of size at least two.
///
/// Degrees count incidences (with multiplicity) and ignore edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Hyperedge>,
    degree: Vec<f64>,
    volume: f64,
    total_weight: f64,
    /// node -> (edge index, multiplicity), ascending edge index
    incidence: Vec<Vec<(usize, usize)>>,
    dropped_edges: usize,
}

impl Hypergraph {
    /// Builds a hypergraph on `node_count` dense indices. Edges with fewer than
    /// two members are dropped and counted in [`Hypergraph::dropped_edges`].
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut kept = Vec::new();
        let mut dropped = 0;
        let mut seen = 0;
        for (index, (mut members, weight)) in edges.into_iter().enumerate() {
            seen += 1;
            if members.is_empty() {
                return Err(Error::EmptyEdge { index });
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight { index, weight });
            }
            if let Some(&node) = members.iter().find(|&&v| v >= node_count) {
                return Err(Error::NodeOutOfRange { node, node_count });
            }
            if members.len() < 2 {
                dropped += 1;
                continue;
            }
            members.sort_unstable();
            kept.push(Hyperedge { members, weight });
        }
        if seen == 0 || kept.is_empty() {
            return Err(Error::EmptyHypergraph);
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} hyperedge(s) with fewer than two members");
        }

        let mut degree = vec![0.0; node_count];
        let mut incidence = vec![Vec::new(); node_count];
        let mut total_weight = 0.0;
        for (e, edge) in kept.iter().enumerate() {
            total_weight += edge.weight;
            for (v, mult) in edge.distinct() {
                degree[v] += mult as f64;
                incidence[v].push((e, mult));
            }
        }
        let volume = degree.iter().sum();
        Ok(Self {
            node_count,
            edges: kept,
            degree,
            volume,
            total_weight,
            incidence,
            dropped_edges: dropped,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Hyperedge {
        &self.edges[e]
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    /// Sum of all node degrees, `vol(V)`.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Sum of edge weights over retained edges.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Edges incident to `v` together with the multiplicity of `v` in each.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn dropped_edges(&self) -> usize {
        self.dropped_edges
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Hyperedge::size).max().unwrap_or(0)
    }

    /// Total edge weight per edge size, indexed by size.
    pub fn weight_by_size(&self) -> Vec<f64> {
        let mut by_size = vec![0.0; self.max_edge_size() + 1];
        for edge in &self.edges {
            by_size[edge.size()] += edge.weight;
        }
        by_size
    }
}

/// Contracts every community of `partition` into a supernode.
///
/// Returns the contracted hypergraph and the community id -> supernode map.
/// Supernodes are numbered by ascending community id. Edge multiplicities and
/// weights are preserved, so no edge is merged or dropped.
pub fn contract(hypergraph: &Hypergraph, partition: &Partition) -> (Hypergraph, HashMap<usize, usize>) {
    let mut ids: Vec<usize> = partition.assignment().to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mapping: HashMap<usize, usize> = ids.iter().enumerate().map(|(s, &c)| (c, s)).collect();

    let edges = hypergraph.edges().iter().map(|edge| {
        let members = edge
            .members()
            .iter()
            .map(|&v| mapping[&partition.community(v)])
            .collect();
        (members, edge.weight())
    });
    let contracted = Hypergraph::from_edges(ids.len(), edges)
        .expect("contraction of a valid hypergraph is valid");
    (contracted, mapping)
}

/// Maps external node tokens to dense indices, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeIndex {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, token: &str) -> usize {
        if let Some(&i) = self.index.get(token) {
            return i;
        }
        let i = self.tokens.len();
        self.tokens.push(token.to_owned());
        self.index.insert(token.to_owned(), i);
        i
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, i: usize) -> &str {
        &self.tokens[i]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Builds a hypergraph from token multisets.
///
/// Every token is registered, including tokens that only appear in dropped
/// size-1 edges; such nodes become isolated.
#[derive(Debug, Default)]
pub struct HypergraphBuilder {
    nodes: NodeIndex,
    edges: Vec<(Vec<usize>, f64)>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_edge<I, S>(&mut self, tokens: I, weight: f64) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let members = tokens
            .into_iter()
            .map(|t| self.nodes.intern(t.as_ref()))
            .collect();
        self.edges.push((members, weight));
        self
    }

    pub fn build(self) -> Result<(Hypergraph, NodeIndex)> {
        let hypergraph = Hypergraph::from_edges(self.nodes.len(), self.edges)?;
        Ok((hypergraph, self.nodes))
    }
}

/// Convenience wrapper: builds a hypergraph from `(tokens, weight)` pairs.
pub fn build_hypergraph<S: AsRef<str>>(edge_list: &[(Vec<S>, f64)]) -> Result<(Hypergraph, NodeIndex)> {
    let mut builder = HypergraphBuilder::new();
    for (tokens, weight) in edge_list {
        builder.add_edge(tokens.iter().map(AsRef::as_ref), *weight);
    }
    builder.build()
}
