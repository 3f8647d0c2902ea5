use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Partition, TwoSectionScheme, WeightedGraph};
use crate::modularity::eta::{majority_threshold, EtaWeights};

/// Which hypergraph modularity to optimize and how to form its 2-section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveConfig {
    pub eta: EtaWeights,
    /// Multiplier on the degree tax; must be positive.
    pub resolution: f64,
    pub scheme: TwoSectionScheme,
}

impl ObjectiveConfig {
    pub fn new(eta: EtaWeights) -> Self {
        Self {
            eta,
            resolution: 1.0,
            scheme: TwoSectionScheme::TotalWeight,
        }
    }

    pub fn with_resolution(mut self, resolution: f64) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_scheme(mut self, scheme: TwoSectionScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resolution.is_finite() && self.resolution > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "resolution must be positive, got {}",
                self.resolution
            )));
        }
        Ok(())
    }
}

/// `P(Bin(d, p) = c)`, with `0^0 = 1`.
pub fn binom_pmf(d: usize, c: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    if c > d {
        return Err(Error::InvalidParameter(format!("c = {c} exceeds d = {d}")));
    }
    Ok(pmf(d, c, p))
}

pub(crate) fn binomial(d: usize, c: usize) -> f64 {
    let k = c.min(d - c);
    (0..k).fold(1.0, |acc, i| acc * (d - i) as f64 / (i + 1) as f64)
}

pub(crate) fn pmf(d: usize, c: usize, p: f64) -> f64 {
    binomial(d, c) * p.powi(c as i32) * (1.0 - p).powi((d - c) as i32)
}

/// Weighted graph modularity of `partition` on `graph`.
pub fn graph_modularity(graph: &WeightedGraph, partition: &Partition, resolution: f64) -> Result<f64> {
    let total = graph.total_weight();
    if total <= 0.0 {
        return Err(Error::InvalidParameter("graph has zero total weight".into()));
    }
    if partition.node_count() != graph.node_count() {
        return Err(Error::NodeSetMismatch(partition.node_count(), graph.node_count()));
    }
    let n = graph.node_count();
    let mut internal = vec![0.0; n];
    let mut volume = vec![0.0; n];
    for (u, v, w) in graph.pairs() {
        if partition.community(u) == partition.community(v) {
            internal[partition.community(u)] += w;
        }
    }
    for v in 0..n {
        volume[partition.community(v)] += graph.degree(v);
    }
    let vol_total = 2.0 * total;
    let edge_contribution: f64 = internal.iter().sum::<f64>() / total;
    let degree_tax: f64 = volume.iter().map(|x| (x / vol_total).powi(2)).sum();
    Ok(edge_contribution - resolution * degree_tax)
}

/// Hypergraph modularity of `partition` under `cfg`.
///
/// Edge weights stand in for edge counts throughout. Community volumes are
/// recomputed from hypergraph degrees.
pub fn hypergraph_modularity(hypergraph: &Hypergraph, partition: &Partition, cfg: &ObjectiveConfig) -> Result<f64> {
    if partition.node_count() != hypergraph.node_count() {
        return Err(Error::NodeSetMismatch(partition.node_count(), hypergraph.node_count()));
    }
    let tables = ObjectiveTables::new(hypergraph, cfg)?;
    let mut volume: HashMap<usize, f64> = HashMap::new();
    for v in 0..hypergraph.node_count() {
        *volume.entry(partition.community(v)).or_insert(0.0) += hypergraph.degree(v);
    }
    let mut counts: HashMap<usize, usize> = HashMap::new();
    let mut edge_contribution = 0.0;
    for edge in hypergraph.edges() {
        counts.clear();
        for &v in edge.members() {
            *counts.entry(partition.community(v)).or_insert(0) += 1;
        }
        let top = counts.values().copied().max().unwrap_or(0);
        edge_contribution += edge.weight() * tables.eta(top, edge.size());
    }
    let mut ids: Vec<usize> = volume.keys().copied().collect();
    ids.sort_unstable();
    let degree_tax: f64 = ids.iter().map(|c| tables.tax(volume[c])).sum();
    Ok((edge_contribution - degree_tax) / tables.total_weight)
}

/// Per-size lookup tables shared by full evaluation and incremental deltas.
#[derive(Debug, Clone)]
pub(crate) struct ObjectiveTables {
    /// η rows indexed by edge size, for c in majority_threshold(d)..=d.
    eta: Vec<Vec<f64>>,
    /// (d, W_d · resolution, binomial coefficients per c) for sizes present.
    sizes: Vec<(usize, f64, Vec<f64>)>,
    pub(crate) total_weight: f64,
    pub(crate) volume: f64,
}

impl ObjectiveTables {
    pub(crate) fn new(hypergraph: &Hypergraph, cfg: &ObjectiveConfig) -> Result<Self> {
        cfg.validate()?;
        let by_size = hypergraph.weight_by_size();
        let mut eta = vec![Vec::new(); by_size.len()];
        let mut sizes = Vec::new();
        for (d, &w) in by_size.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            let row = cfg.eta.row(d).ok_or(Error::MissingEta(d))?;
            let coeffs = (majority_threshold(d)..=d)
                .zip(&row)
                .map(|(c, &e)| e * binomial(d, c))
                .collect();
            eta[d] = row;
            sizes.push((d, w * cfg.resolution, coeffs));
        }
        Ok(Self {
            eta,
            sizes,
            total_weight: hypergraph.total_weight(),
            volume: hypergraph.volume(),
        })
    }

    /// `η(c, d)` for an edge whose largest community holds `c` members.
    #[inline]
    pub(crate) fn eta(&self, c: usize, d: usize) -> f64 {
        let lo = majority_threshold(d);
        if c < lo {
            0.0
        } else {
            self.eta[d][c - lo]
        }
    }

    /// Unnormalized degree tax of one community with volume `vol`:
    /// `resolution · Σ_d W_d Σ_c η(c,d) P(Bin(d, vol/vol(V)) = c)`.
    pub(crate) fn tax(&self, vol: f64) -> f64 {
        let p = (vol / self.volume).clamp(0.0, 1.0);
        if p == 0.0 {
            return 0.0;
        }
        let q = 1.0 - p;
        let mut total = 0.0;
        for (d, weight, coeffs) in &self.sizes {
            let lo = majority_threshold(*d);
            let mut inner = 0.0;
            for (i, coeff) in coeffs.iter().enumerate() {
                if *coeff == 0.0 {
                    continue;
                }
                let c = lo + i;
                inner += coeff * p.powi(c as i32) * q.powi((d - c) as i32);
            }
            total += weight * inner;
        }
        total
    }
}
