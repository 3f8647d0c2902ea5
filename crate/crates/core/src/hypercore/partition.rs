use crate::error::{Error, Result};

/// Assignment of nodes to communities, with per-community volume caches.
///
/// Community ids live in `0..node_count`; an id is in use while its community
/// is non-empty. Ids stay stable across moves and are only densified by
/// [`Partition::labels`] or contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    assignment: Vec<usize>,
    node_weight: Vec<f64>,
    volume: Vec<f64>,
    size: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Every node in its own community; node `v` gets id `v`.
    pub fn singletons(node_weight: &[f64]) -> Self {
        let n = node_weight.len();
        Self {
            assignment: (0..n).collect(),
            node_weight: node_weight.to_vec(),
            volume: node_weight.to_vec(),
            size: vec![1; n],
            count: n,
        }
    }

    /// Builds a partition from arbitrary labels, relabelled densely in order
    /// of first appearance.
    pub fn from_labels(labels: &[usize], node_weight: &[f64]) -> Result<Self> {
        if labels.len() != node_weight.len() {
            return Err(Error::NodeSetMismatch(labels.len(), node_weight.len()));
        }
        let n = labels.len();
        let assignment = dense_labels(labels);
        let mut volume = vec![0.0; n];
        let mut size = vec![0; n];
        for (v, &c) in assignment.iter().enumerate() {
            volume[c] += node_weight[v];
            size[c] += 1;
        }
        let count = size.iter().filter(|&&s| s > 0).count();
        Ok(Self {
            assignment,
            node_weight: node_weight.to_vec(),
            volume,
            size,
            count,
        })
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Number of non-empty communities.
    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn volume(&self, community: usize) -> f64 {
        self.volume[community]
    }

    pub fn volumes(&self) -> &[f64] {
        &self.volume
    }

    pub fn size(&self, community: usize) -> usize {
        self.size[community]
    }

    pub fn node_weight(&self, v: usize) -> f64 {
        self.node_weight[v]
    }

    /// Ids of the non-empty communities, ascending.
    pub fn community_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.size.iter().enumerate().filter(|(_, &s)| s > 0).map(|(c, _)| c)
    }

    /// An unused community id, if any.
    pub fn fresh_community(&self) -> Option<usize> {
        self.size.iter().position(|&s| s == 0)
    }

    /// Moves `v` into `target`, which may be an empty (fresh) id.
    pub fn move_node(&mut self, v: usize, target: usize) {
        let source = self.assignment[v];
        if source == target {
            return;
        }
        let w = self.node_weight[v];
        self.volume[source] -= w;
        self.size[source] -= 1;
        if self.size[source] == 0 {
            self.volume[source] = 0.0;
            self.count -= 1;
        }
        if self.size[target] == 0 {
            self.count += 1;
        }
        self.volume[target] += w;
        self.size[target] += 1;
        self.assignment[v] = target;
    }

    /// Dense labels `0..community_count` in order of first appearance.
    pub fn labels(&self) -> Vec<usize> {
        dense_labels(&self.assignment)
    }

    /// Members of each community, in [`Partition::labels`] order.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Checks caches against a full recount.
    pub fn is_consistent(&self, tolerance: f64) -> bool {
        let n = self.assignment.len();
        let mut volume = vec![0.0; n];
        let mut size = vec![0; n];
        for (v, &c) in self.assignment.iter().enumerate() {
            if c >= n {
                return false;
            }
            volume[c] += self.node_weight[v];
            size[c] += 1;
        }
        let count = size.iter().filter(|&&s| s > 0).count();
        count == self.count
            && size == self.size
            && volume
                .iter()
                .zip(&self.volume)
                .all(|(a, b)| (a - b).abs() <= tolerance)
    }
}

fn dense_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}
