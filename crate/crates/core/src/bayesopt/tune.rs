use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bayesopt::acquisition::propose_next;
use crate::bayesopt::gp::{gp_fit, Domain, GpHyperparams};
use crate::error::{Error, Result};
use crate::hlouvain::{h_louvain, AlphaPolicy, Ending, RunConfig, RunResult};
use crate::hypercore::{Hypergraph, Partition};
use crate::modularity::ObjectiveConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TunerConfig {
    pub init_points: usize,
    pub min_evaluations: usize,
    /// Hard cap on evaluations.
    pub max_evaluations: usize,
    pub seeds: Vec<u64>,
    pub p_b_range: (f64, f64),
    pub p_c_range: (f64, f64),
    pub patience: usize,
    pub min_improvement: f64,
    pub master_seed: u64,
}

impl Default for TunerConfig {
    fn default() -> Self {
        Self {
            init_points: 5,
            min_evaluations: 10,
            max_evaluations: 50,
            seeds: (1..=10).collect(),
            p_b_range: (0.0, 1.0),
            p_c_range: (0.01, 0.99),
            patience: 5,
            min_improvement: 1e-4,
            master_seed: 0,
        }
    }
}

impl TunerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.init_points == 0 {
            return bad("init_points must be at least 1".into());
        }
        if self.min_evaluations < self.init_points {
            return bad("min_evaluations must be >= init_points".into());
        }
        if self.max_evaluations < self.min_evaluations {
            return bad("max_evaluations must be >= min_evaluations".into());
        }
        if self.seeds.is_empty() {
            return bad("seed list is empty".into());
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.seeds.len() {
            return bad("seeds must be distinct".into());
        }
        let (b0, b1) = self.p_b_range;
        let (c0, c1) = self.p_c_range;
        if !(0.0 <= b0 && b0 < b1 && b1 <= 1.0) {
            return bad(format!("p_b range ({b0}, {b1}) must lie in [0, 1]"));
        }
        if !(0.0 < c0 && c0 < c1 && c1 < 1.0) {
            return bad(format!("p_c range ({c0}, {c1}) must lie in (0, 1)"));
        }
        if !(self.min_improvement >= 0.0) {
            return bad("min_improvement must be non-negative".into());
        }
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        Domain {
            p_b: self.p_b_range,
            p_c: self.p_c_range,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub p_b: f64,
    pub p_c: f64,
    pub mean_q: f64,
    pub per_seed: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub evaluations: Vec<Evaluation>,
    /// Point with the best seed-averaged modularity.
    pub best_point: (f64, f64),
    /// Best partition seen over all runs, after the final local pass.
    pub best_partition: Partition,
    pub best_q_h: f64,
    /// `(p_b, p_c, seed)` that produced `best_partition`.
    pub best_run: (f64, f64, u64),
    pub surrogate_snapshot: GpHyperparams,
}

impl TuneResult {
    /// `eval_index,p_b,p_c,mean_q,best_so_far` with a header line.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("eval_index,p_b,p_c,mean_q,best_so_far\n");
        let mut best = f64::NEG_INFINITY;
        for (i, e) in self.evaluations.iter().enumerate() {
            best = best.max(e.mean_q);
            let _ = writeln!(out, "{i},{},{},{},{best}", e.p_b, e.p_c, e.mean_q);
        }
        out
    }
}

/// Runs h-Louvain once per seed with the default ending and returns the mean
/// `q_h` together with every run.
pub fn objective(
    hypergraph: &Hypergraph,
    cfg: &ObjectiveConfig,
    point: (f64, f64),
    seeds: &[u64],
) -> Result<(f64, Vec<RunResult>)> {
    let policy = AlphaPolicy::new(point.0, point.1)?;
    let runs = seeds
        .par_iter()
        .map(|&seed| h_louvain(hypergraph, &RunConfig::new(cfg.clone(), policy, seed)))
        .collect::<Result<Vec<_>>>()?;
    let mean = runs.iter().map(|r| r.q_h).sum::<f64>() / runs.len() as f64;
    Ok((mean, runs))
}

/// Bayesian optimization of `(p_b, p_c)`.
///
/// Evaluation `i` draws from stream `i` of the master seed, so a longer run
/// repeats a shorter one's trace as a prefix. The loop stops once
/// `min_evaluations` are done and the last `patience` proposals (or all of
/// them, if fewer) failed to raise the best mean by more than
/// `min_improvement`.
pub fn tune(hypergraph: &Hypergraph, cfg: &ObjectiveConfig, tcfg: &TunerConfig) -> Result<TuneResult> {
    tcfg.validate()?;
    cfg.validate()?;
    let domain = tcfg.domain();
    let mut evaluations: Vec<Evaluation> = Vec::new();
    let mut best_mean = f64::NEG_INFINITY;
    let mut best_point = (0.0, 0.0);
    let mut best_single: Option<(f64, Partition, (f64, f64, u64))> = None;
    let mut stale = 0;
    let mut proposals = 0;

    while evaluations.len() < tcfg.max_evaluations {
        let i = evaluations.len();
        if i >= tcfg.min_evaluations && stale >= tcfg.patience.min(proposals) {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(tcfg.master_seed);
        rng.set_stream(i as u64);
        let point = if i < tcfg.init_points {
            [
                rng.gen_range(domain.p_b.0..=domain.p_b.1),
                rng.gen_range(domain.p_c.0..=domain.p_c.1),
            ]
        } else {
            let obs: Vec<([f64; 2], f64)> = evaluations.iter().map(|e| ([e.p_b, e.p_c], e.mean_q)).collect();
            proposals += 1;
            propose_next(&gp_fit(&obs, &domain)?, &mut rng)
        };
        let (mean_q, runs) = objective(hypergraph, cfg, (point[0], point[1]), &tcfg.seeds)?;
        log::info!("evaluation {i}: p_b={:.4} p_c={:.4} mean_q={mean_q:.6}", point[0], point[1]);

        if i >= tcfg.init_points {
            if mean_q > best_mean + tcfg.min_improvement {
                stale = 0;
            } else {
                stale += 1;
            }
        }
        if mean_q > best_mean {
            best_mean = mean_q;
            best_point = (point[0], point[1]);
        }
        for (run, &seed) in runs.iter().zip(&tcfg.seeds) {
            if best_single.as_ref().map_or(true, |(q, _, _)| run.q_h > *q) {
                best_single = Some((run.q_h, run.partition.clone(), (point[0], point[1], seed)));
            }
        }
        evaluations.push(Evaluation {
            p_b: point[0],
            p_c: point[1],
            mean_q,
            per_seed: runs.iter().map(|r| r.q_h).collect(),
        });
    }

    let (mut best_q_h, mut best_partition, best_run) = best_single.expect("at least one evaluation");
    let (p_b, p_c, seed) = best_run;
    let rerun_cfg = RunConfig::new(cfg.clone(), AlphaPolicy::new(p_b, p_c)?, seed).with_ending(Ending::LocalOptOriginal);
    let rerun = h_louvain(hypergraph, &rerun_cfg)?;
    if rerun.q_h > best_q_h {
        best_q_h = rerun.q_h;
        best_partition = rerun.partition;
    }
    let obs: Vec<([f64; 2], f64)> = evaluations.iter().map(|e| ([e.p_b, e.p_c], e.mean_q)).collect();
    let surrogate_snapshot = gp_fit(&obs, &domain)?.hyperparams();
    Ok(TuneResult {
        evaluations,
        best_point,
        best_partition,
        best_q_h,
        best_run,
        surrogate_snapshot,
    })
}
