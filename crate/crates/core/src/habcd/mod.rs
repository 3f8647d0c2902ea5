//! Small synthetic hypergraphs with planted communities ("h-ABCD-lite").
//!
//! Degrees and community sizes follow truncated power laws. Edges are placed
//! by sampling members in proportion to their residual target degree, which
//! approximates the target degree sequence without matching it exactly.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Partition};

const SIZE_ATTEMPTS: usize = 10_000;

/// Distribution of `c` (members from the home community) for a community edge
/// of size `d`, over `d/2 < c <= d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WcdModel {
    Majority,
    Linear,
    Strict,
    /// Rows keyed by `d`, listing weights for ascending admissible `c`.
    Custom(BTreeMap<usize, Vec<f64>>),
}

/// Weights over `c = ⌊d/2⌋ + 1, …, d`, summing to 1.
pub fn wcd_weights(model: &WcdModel, d: usize) -> Result<Vec<f64>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("edge size must be >= 2, got {d}")));
    }
    let lo = d / 2 + 1;
    let len = d - d / 2;
    Ok(match model {
        WcdModel::Majority => vec![1.0 / len as f64; len],
        WcdModel::Linear => {
            let denom = ((d + d / 2 + 1) * len) as f64;
            (lo..=d).map(|c| 2.0 * c as f64 / denom).collect()
        }
        WcdModel::Strict => {
            let mut w = vec![0.0; len];
            w[len - 1] = 1.0;
            w
        }
        WcdModel::Custom(rows) => {
            let row = rows.get(&d).ok_or_else(|| Error::InvalidParameter(format!("no wcd row for size {d}")))?;
            if row.len() != len || row.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::InvalidParameter(format!("wcd row for size {d} needs {len} non-negative entries")));
            }
            let sum: f64 = row.iter().sum();
            if sum <= 0.0 {
                return Err(Error::InvalidParameter(format!("wcd row for size {d} sums to zero")));
            }
            row.iter().map(|x| x / sum).collect()
        }
    })
}

/// Integer power law on `[lo, hi]` with `P(k) ∝ k^(−exponent)`.
#[derive(Debug, Clone)]
pub struct PowerLaw {
    lo: usize,
    index: WeightedIndex<f64>,
}

impl PowerLaw {
    pub fn new(exponent: f64, lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidParameter(format!("power-law range [{lo}, {hi}] is invalid")));
        }
        if !(exponent > 1.0) {
            return Err(Error::InvalidParameter(format!("power-law exponent must exceed 1, got {exponent}")));
        }
        let weights = (lo..=hi).map(|k| (k as f64).powf(-exponent));
        let index = WeightedIndex::new(weights).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(Self { lo, index })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.lo + self.index.sample(rng)
    }
}

/// One draw from [`PowerLaw`].
pub fn sample_powerlaw<R: Rng + ?Sized>(exponent: f64, lo: usize, hi: usize, rng: &mut R) -> Result<usize> {
    Ok(PowerLaw::new(exponent, lo, hi)?.sample(rng))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub degree_exponent: f64,
    pub degree_range: (usize, usize),
    pub community_exponent: f64,
    pub community_range: (usize, usize),
    pub noise: f64,
    /// `(d, q_d)` pairs; the `q_d` must sum to 1.
    pub size_distribution: Vec<(usize, f64)>,
    pub wcd_model: WcdModel,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            n: 300,
            degree_exponent: 2.5,
            degree_range: (5, 30),
            community_exponent: 1.5,
            community_range: (40, 60),
            noise: 0.3,
            size_distribution: vec![(2, 0.1), (3, 0.4), (4, 0.4), (5, 0.1)],
            wcd_model: WcdModel::Strict,
            seed: 0,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        let (dmin, dmax) = self.degree_range;
        let (smin, smax) = self.community_range;
        if self.n == 0 {
            return Err(Error::Infeasible("n must be positive".into()));
        }
        if dmin < 2 || dmin > dmax {
            return Err(Error::Infeasible(format!("degree range [{dmin}, {dmax}] needs 2 <= min <= max")));
        }
        if smin == 0 || smin > smax || smax > self.n {
            return Err(Error::Infeasible(format!(
                "community range [{smin}, {smax}] needs 1 <= min <= max <= n = {}",
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::InvalidParameter(format!("noise must lie in [0, 1], got {}", self.noise)));
        }
        if self.size_distribution.is_empty() {
            return Err(Error::InvalidParameter("size distribution is empty".into()));
        }
        let mut total = 0.0;
        for &(d, q) in &self.size_distribution {
            if d < 2 || d > self.n {
                return Err(Error::InvalidParameter(format!("edge size {d} outside [2, n]")));
            }
            if !(q >= 0.0) {
                return Err(Error::InvalidParameter(format!("size probability {q} is negative")));
            }
            if q > 0.0 && self.noise < 1.0 {
                wcd_weights(&self.wcd_model, d)?;
            }
            total += q;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("size probabilities sum to {total}, not 1")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub partition: Partition,
    /// Fraction of edges placed as background noise.
    pub realized_noise: f64,
    pub background_edges: usize,
}

/// Builds a hypergraph with planted communities from `params`.
pub fn generate(params: &GenParams) -> Result<(Hypergraph, GroundTruth)> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;

    let degree_law = PowerLaw::new(params.degree_exponent, params.degree_range.0, params.degree_range.1)?;
    let target: Vec<usize> = (0..n).map(|_| degree_law.sample(&mut rng)).collect();

    let sizes = community_sizes(params, &mut rng)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut labels = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for (c, &s) in sizes.iter().enumerate() {
        let mut block: Vec<usize> = order[start..start + s].to_vec();
        block.sort_unstable();
        for &v in &block {
            labels[v] = c;
        }
        members.push(block);
        start += s;
    }
    let outsiders: Vec<Vec<usize>> = (0..sizes.len())
        .map(|c| (0..n).filter(|&v| labels[v] != c).collect())
        .collect();
    let everyone: Vec<usize> = (0..n).collect();

    let mean_size: f64 = params.size_distribution.iter().map(|&(d, q)| d as f64 * q).sum();
    let total_degree: usize = target.iter().sum();
    let m = ((total_degree as f64 / mean_size).round() as usize).max(1);

    let size_index = WeightedIndex::new(params.size_distribution.iter().map(|&(_, q)| q))
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let community_volume: Vec<f64> = members
        .iter()
        .map(|block| block.iter().map(|&v| target[v] as f64).sum())
        .collect();
    let community_index =
        WeightedIndex::new(&community_volume).map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let mut residual: Vec<f64> = target.iter().map(|&k| k as f64).collect();
    let mut edges = Vec::with_capacity(m);
    let mut background = 0;
    for _ in 0..m {
        let d = params.size_distribution[size_index.sample(&mut rng)].0;
        let mut placed = None;
        if !rng.gen_bool(params.noise) {
            let home = community_index.sample(&mut rng);
            if let Some(c) = draw_home_count(&params.wcd_model, d, members[home].len(), n, &mut rng)? {
                let mut edge = sample_weighted(&members[home], &residual, c, &mut rng);
                edge.extend(sample_weighted(&outsiders[home], &residual, d - c, &mut rng));
                placed = Some(edge);
            }
        }
        let edge = match placed {
            Some(edge) => edge,
            None => {
                background += 1;
                sample_weighted(&everyone, &residual, d, &mut rng)
            }
        };
        for &v in &edge {
            residual[v] = (residual[v] - 1.0).max(0.0);
        }
        edges.push((edge, 1.0));
    }

    let hypergraph = Hypergraph::from_edges(n, edges)?;
    let partition = Partition::from_labels(&labels, hypergraph.degrees())?;
    Ok((
        hypergraph,
        GroundTruth {
            partition,
            realized_noise: background as f64 / m as f64,
            background_edges: background,
        },
    ))
}

fn community_sizes<R: Rng>(params: &GenParams, rng: &mut R) -> Result<Vec<usize>> {
    let (smin, smax) = params.community_range;
    let law = PowerLaw::new(params.community_exponent, smin, smax)?;
    for _ in 0..SIZE_ATTEMPTS {
        let mut sizes = Vec::new();
        let mut sum = 0;
        while sum < params.n {
            let s = law.sample(rng);
            sizes.push(s.min(params.n - sum));
            sum += s;
        }
        let last = *sizes.last().expect("n > 0 gives at least one community");
        if last + 1 >= smin {
            return Ok(sizes);
        }
    }
    Err(Error::Infeasible(format!(
        "no community sizes in [{smin}, {smax}] summing to {} after {SIZE_ATTEMPTS} attempts",
        params.n
    )))
}

/// `c` for a community edge of size `d` in a community of `size` nodes, or
/// `None` when no admissible `c` fits.
fn draw_home_count<R: Rng>(model: &WcdModel, d: usize, size: usize, n: usize, rng: &mut R) -> Result<Option<usize>> {
    let lo = d / 2 + 1;
    let weights: Vec<f64> = wcd_weights(model, d)?
        .into_iter()
        .zip(lo..=d)
        .map(|(w, c)| if c <= size && d - c <= n - size { w } else { 0.0 })
        .collect();
    if weights.iter().all(|&w| w == 0.0) {
        return Ok(None);
    }
    let index = WeightedIndex::new(&weights).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(Some(lo + index.sample(rng)))
}

/// `k` distinct members of `pool`, each draw proportional to `weight`
/// (uniform once the remaining weight is exhausted).
fn sample_weighted<R: Rng>(pool: &[usize], weight: &[f64], k: usize, rng: &mut R) -> Vec<usize> {
    let mut remaining: Vec<usize> = pool.to_vec();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let total: f64 = remaining.iter().map(|&v| weight[v]).sum();
        let i = if total > 0.0 {
            let mut x = rng.gen::<f64>() * total;
            let mut pick = 0;
            for (i, &v) in remaining.iter().enumerate() {
                if weight[v] > 0.0 {
                    pick = i;
                    x -= weight[v];
                    if x < 0.0 {
                        break;
                    }
                }
            }
            pick
        } else {
            rng.gen_range(0..remaining.len())
        };
        out.push(remaining.swap_remove(i));
    }
    out
}

/// Appends `k` edges of size `d`, each drawn uniformly without replacement
/// from the union of the two smallest ground-truth communities.
pub fn inject_local_noise(
    hypergraph: &Hypergraph,
    truth: &GroundTruth,
    k: usize,
    d: usize,
    seed: u64,
) -> Result<(Hypergraph, GroundTruth)> {
    let blocks = truth.partition.communities();
    if blocks.len() < 2 {
        return Err(Error::Infeasible("local noise needs at least two communities".into()));
    }
    let mut by_size: Vec<usize> = (0..blocks.len()).collect();
    by_size.sort_by_key(|&i| (blocks[i].len(), i));
    let mut pool: Vec<usize> = blocks[by_size[0]].iter().chain(&blocks[by_size[1]]).copied().collect();
    pool.sort_unstable();
    if d < 2 || d > pool.len() {
        return Err(Error::Infeasible(format!(
            "edge size {d} does not fit the {} nodes of the two smallest communities",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vec<usize>, f64)> = hypergraph
        .edges()
        .iter()
        .map(|e| (e.members().to_vec(), e.weight()))
        .collect();
    for _ in 0..k {
        let picked = rand::seq::index::sample(&mut rng, pool.len(), d);
        edges.push((picked.iter().map(|i| pool[i]).collect(), 1.0));
    }
    let total = edges.len();
    let h = Hypergraph::from_edges(hypergraph.node_count(), edges)?;
    let partition = Partition::from_labels(&truth.partition.labels(), h.degrees())?;
    let background = truth.background_edges + k;
    Ok((
        h,
        GroundTruth {
            partition,
            realized_noise: background as f64 / total as f64,
            background_edges: background,
        },
    ))
}

#[cfg(test)]
mod tests;
