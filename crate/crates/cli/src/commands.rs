use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use hlouvain_core::bayesopt::{tune, TunerConfig};
use hlouvain_core::habcd::{generate, inject_local_noise, GenParams, WcdModel};
use hlouvain_core::hlouvain::{h_louvain, louvain_graph, AlphaPolicy, Ending, RunConfig, RunResult};
use hlouvain_core::hypercore::io::{format_hypergraph, format_partition, labels_for, read_hypergraph, read_partition};
use hlouvain_core::hypercore::{two_section, Hypergraph, NodeIndex, TwoSectionScheme};
use hlouvain_core::metrics::{ami_labels, suggest_tau, AmiNormalization, ContingencyTable};
use hlouvain_core::modularity::{edge_composition, hypergraph_modularity, EtaWeights, ObjectiveConfig, TauChoice};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    Cli, ClusterArgs, Command, EdaArgs, EndingArg, GenerateArgs, NormalizationArg, ObjectiveArgs, SchemeArg,
    ScoreArgs, TuneArgs, WcdArg,
};
use crate::config::{self, FileConfig, ObjectiveConfigFile};
use crate::CliError;

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: Cli) -> CliResult<()> {
    let file = config::load(cli.config.as_deref())?;
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let threads = cli.threads.or(file.threads);
    if threads == Some(0) {
        return Err(CliError::Flag("--threads must be at least 1".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Invariant(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Cluster(args) => cluster(args, &file, seed),
        Command::Tune(args) => tune_cmd(args, &file, seed),
        Command::Eda(args) => eda(args, &file, seed),
        Command::Generate(args) => generate_cmd(args, &file, seed),
        Command::Score(args) => score(args, &file),
    })
}

fn load_hypergraph(path: &Path) -> CliResult<(Hypergraph, NodeIndex)> {
    read_hypergraph(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Flag(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn objective_config(args: &ObjectiveArgs, file: &ObjectiveConfigFile) -> CliResult<ObjectiveConfig> {
    let eta = if let Some(tau) = args.tau {
        EtaWeights::tau(tau)?
    } else if args.strict {
        EtaWeights::strict()
    } else if let Some(path) = &args.eta_file {
        EtaWeights::custom(config::read_rows(path)?)?
    } else if let Some(tau) = file.tau {
        EtaWeights::tau(tau)?
    } else if file.strict == Some(true) {
        EtaWeights::strict()
    } else if let Some(rows) = &file.eta {
        EtaWeights::custom(rows.clone())?
    } else {
        EtaWeights::tau(2.0)?
    };
    let scheme = match args.scheme {
        Some(SchemeArg::TotalWeight) => TwoSectionScheme::TotalWeight,
        Some(SchemeArg::DegreePreserving) => TwoSectionScheme::DegreePreserving,
        None => file.scheme.unwrap_or_default(),
    };
    let cfg = ObjectiveConfig::new(eta)
        .with_resolution(args.resolution.or(file.resolution).unwrap_or(1.0))
        .with_scheme(scheme);
    cfg.validate()?;
    Ok(cfg)
}

fn check_run(h: &Hypergraph, cfg: &ObjectiveConfig, labels: &[usize], q_h: f64) -> CliResult<()> {
    if labels.len() != h.node_count() || !q_h.is_finite() {
        return Err(CliError::Invariant("result does not cover the node set".into()));
    }
    let partition = hlouvain_core::hypercore::Partition::from_labels(labels, h.degrees())?;
    let recomputed = hypergraph_modularity(h, &partition, cfg)?;
    if (recomputed - q_h).abs() > 1e-9 {
        return Err(CliError::Invariant(format!("q_h {q_h} differs from recomputed {recomputed}")));
    }
    Ok(())
}

fn cluster(args: ClusterArgs, file: &FileConfig, seed: u64) -> CliResult<()> {
    let cfg = objective_config(&args.objective, &file.objective)?;
    let p_b = args.pb.or(file.cluster.p_b).unwrap_or(0.5);
    let p_c = args.pc.or(file.cluster.p_c).unwrap_or(0.5);
    let policy = AlphaPolicy::new(p_b, p_c)?;
    let runs = args.runs.or(file.cluster.runs).unwrap_or(10);
    if runs == 0 {
        return Err(CliError::Flag("--runs must be at least 1".into()));
    }
    let ending = match args.ending {
        Some(EndingArg::SupernodeDefault) => Ending::SupernodeDefault,
        Some(EndingArg::LocalOptOriginal) => Ending::LocalOptOriginal,
        None => file.cluster.ending.unwrap_or_default(),
    };
    let (h, nodes) = load_hypergraph(&args.input)?;
    let mut template = RunConfig::new(cfg.clone(), policy, seed).with_ending(ending);
    if let Some(limit) = file.cluster.max_sweeps_per_level {
        template.max_sweeps_per_level = limit;
    }
    let results: Vec<RunResult> = (0..runs as u64)
        .into_par_iter()
        .map(|i| {
            let mut run_cfg = template.clone();
            run_cfg.seed = seed.wrapping_add(i);
            h_louvain(&h, &run_cfg)
        })
        .collect::<Result<_, _>>()?;
    let best = results
        .iter()
        .reduce(|a, b| if b.q_h > a.q_h { b } else { a })
        .expect("runs >= 1");
    let labels = best.partition.labels();
    check_run(&h, &cfg, &labels, best.q_h)?;
    let text = format_partition(&nodes, &labels);
    if args.out.is_none() {
        println!("q_h={} runs={runs}", best.q_h);
        write_or_print(None, &text)
    } else {
        write_or_print(args.out.as_deref(), &text)?;
        println!("q_h={} runs={runs}", best.q_h);
        Ok(())
    }
}

fn tune_cmd(args: TuneArgs, file: &FileConfig, seed: u64) -> CliResult<()> {
    let cfg = objective_config(&args.objective, &file.objective)?;
    let defaults = TunerConfig::default();
    let t = &file.tune;
    let init_points = args.init.or(t.init_points).unwrap_or(defaults.init_points);
    let min_evaluations = args
        .min_evals
        .or(t.min_evaluations)
        .unwrap_or(defaults.min_evaluations.max(init_points));
    let tcfg = TunerConfig {
        init_points,
        min_evaluations,
        max_evaluations: args
            .max_evals
            .or(t.max_evaluations)
            .unwrap_or(defaults.max_evaluations.max(min_evaluations)),
        seeds: t.seeds.clone().unwrap_or(defaults.seeds),
        p_b_range: t.p_b_range.unwrap_or(defaults.p_b_range),
        p_c_range: t.p_c_range.unwrap_or(defaults.p_c_range),
        patience: args.patience.or(t.patience).unwrap_or(defaults.patience),
        min_improvement: t.min_improvement.unwrap_or(defaults.min_improvement),
        master_seed: seed,
    };
    tcfg.validate()?;
    let (h, nodes) = load_hypergraph(&args.input)?;
    let result = tune(&h, &cfg, &tcfg)?;
    let labels = result.best_partition.labels();
    check_run(&h, &cfg, &labels, result.best_q_h)?;
    let trace_path: Option<PathBuf> = args.trace.clone().or_else(|| {
        args.out.as_ref().map(|out| {
            let mut name = out.as_os_str().to_owned();
            name.push(".trace.csv");
            PathBuf::from(name)
        })
    });
    let summary = format!(
        "best_pb={} best_pc={} q_h={}",
        result.best_point.0, result.best_point.1, result.best_q_h
    );
    match &args.out {
        Some(out) => {
            write_or_print(Some(out), &format_partition(&nodes, &labels))?;
            if let Some(trace) = &trace_path {
                write_or_print(Some(trace), &result.trace_csv())?;
            }
            println!("{summary}");
        }
        None => {
            println!("{summary}");
            match &trace_path {
                Some(trace) => write_or_print(Some(trace), &result.trace_csv())?,
                None => print!("{}", result.trace_csv()),
            }
            print!("{}", format_partition(&nodes, &labels));
        }
    }
    Ok(())
}

fn eda(args: EdaArgs, file: &FileConfig, seed: u64) -> CliResult<()> {
    let (h, nodes) = load_hypergraph(&args.input)?;
    let labels = match &args.partition {
        Some(path) => {
            let entries = read_partition(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            labels_for(&nodes, &entries)?
        }
        None => {
            let runs = args.runs.or(file.eda.runs).unwrap_or(10);
            if runs == 0 {
                return Err(CliError::Flag("--runs must be at least 1".into()));
            }
            let g = two_section(&h, file.objective.scheme.unwrap_or_default());
            let results = (0..runs as u64)
                .into_par_iter()
                .map(|i| louvain_graph(&g, seed.wrapping_add(i), 1.0))
                .collect::<Result<Vec<_>, _>>()?;
            let best = results
                .into_iter()
                .reduce(|a, b| if b.q_g > a.q_g { b } else { a })
                .expect("runs >= 1");
            best.partition.labels()
        }
    };
    let partition = hlouvain_core::hypercore::Partition::from_labels(&labels, h.degrees())?;
    let table = edge_composition(&h, &partition);
    let rec = suggest_tau(&table);
    print!("{}", table.to_csv());
    println!("purity_ratio={}", rec.purity_ratio);
    match rec.suggested {
        TauChoice::Strict => println!("suggested=strict"),
        TauChoice::Tau(t) => println!("suggested=tau={t}"),
    }
    println!("rationale={}", rec.rationale);
    Ok(())
}

fn parse_sizes(text: &str) -> CliResult<Vec<(usize, f64)>> {
    text.split(',')
        .map(|pair| {
            let (d, q) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Flag(format!("size entry `{pair}` is not `d:q`")))?;
            let d = d.trim().parse().map_err(|_| CliError::Flag(format!("bad edge size `{d}`")))?;
            let q = q.trim().parse().map_err(|_| CliError::Flag(format!("bad probability `{q}`")))?;
            Ok((d, q))
        })
        .collect()
}

fn parse_pair(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Flag(format!("`{text}` is not `k,d`"));
    let (k, d) = text.split_once(',').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct Sidecar<'a> {
    params: &'a GenParams,
    inject_local_noise: Option<(usize, usize)>,
    realized_noise: f64,
    nodes: usize,
    edges: usize,
}

fn generate_cmd(args: GenerateArgs, file: &FileConfig, seed: u64) -> CliResult<()> {
    let g = &file.generate;
    let defaults = GenParams::default();
    let wcd_model = match (args.wcd, &args.wcd_file) {
        (Some(WcdArg::Majority), _) => WcdModel::Majority,
        (Some(WcdArg::Linear), _) => WcdModel::Linear,
        (Some(WcdArg::Strict), _) => WcdModel::Strict,
        (None, Some(path)) => WcdModel::Custom(config::read_rows(path)?),
        (None, None) => g.wcd_model.clone().unwrap_or(defaults.wcd_model),
    };
    let params = GenParams {
        n: args.n.or(g.n).unwrap_or(defaults.n),
        degree_exponent: args.degree_exponent.or(g.degree_exponent).unwrap_or(defaults.degree_exponent),
        degree_range: {
            let base = g.degree_range.unwrap_or(defaults.degree_range);
            (args.degree_min.unwrap_or(base.0), args.degree_max.unwrap_or(base.1))
        },
        community_exponent: args
            .community_exponent
            .or(g.community_exponent)
            .unwrap_or(defaults.community_exponent),
        community_range: {
            let base = g.community_range.unwrap_or(defaults.community_range);
            (args.community_min.unwrap_or(base.0), args.community_max.unwrap_or(base.1))
        },
        noise: args.noise.or(g.noise).unwrap_or(defaults.noise),
        size_distribution: match &args.sizes {
            Some(text) => parse_sizes(text)?,
            None => g.size_distribution.clone().unwrap_or(defaults.size_distribution),
        },
        wcd_model,
        seed,
    };
    let local = match &args.inject_local_noise {
        Some(text) => Some(parse_pair(text)?),
        None => g.inject_local_noise,
    };
    let (mut h, mut truth) = generate(&params)?;
    if let Some((k, d)) = local {
        let (h2, t2) = inject_local_noise(&h, &truth, k, d, seed)?;
        h = h2;
        truth = t2;
    }
    let mut nodes = NodeIndex::new();
    for v in 0..h.node_count() {
        nodes.intern(&v.to_string());
    }
    let prefix = args.out_prefix.as_os_str().to_owned();
    let path = |ext: &str| {
        let mut p = prefix.clone();
        p.push(ext);
        PathBuf::from(p)
    };
    write_or_print(Some(&path(".hyper")), &format_hypergraph(&h, &nodes))?;
    write_or_print(Some(&path(".truth")), &format_partition(&nodes, &truth.partition.labels()))?;
    let sidecar = Sidecar {
        params: &params,
        inject_local_noise: local,
        realized_noise: truth.realized_noise,
        nodes: h.node_count(),
        edges: h.edge_count(),
    };
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| CliError::Invariant(e.to_string()))?;
    write_or_print(Some(&path(".json")), &(json + "\n"))?;
    println!(
        "nodes={} edges={} realized_noise={}",
        h.node_count(),
        h.edge_count(),
        truth.realized_noise
    );
    Ok(())
}

fn score(args: ScoreArgs, file: &FileConfig) -> CliResult<()> {
    let read = |path: &Path| read_partition(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())));
    let mut first = read(&args.first)?;
    let mut second = read(&args.second)?;
    first.sort_by(|a, b| a.0.cmp(&b.0));
    second.sort_by(|a, b| a.0.cmp(&b.0));
    if first.len() != second.len() || first.iter().zip(&second).any(|(a, b)| a.0 != b.0) {
        return Err(CliError::Parse("partitions cover different node sets".into()));
    }
    let a: Vec<usize> = first.iter().map(|e| e.1).collect();
    let b: Vec<usize> = second.iter().map(|e| e.1).collect();
    let normalization = match args.normalization {
        Some(NormalizationArg::Arithmetic) => AmiNormalization::Arithmetic,
        Some(NormalizationArg::Geometric) => AmiNormalization::Geometric,
        Some(NormalizationArg::Max) => AmiNormalization::Max,
        Some(NormalizationArg::Min) => AmiNormalization::Min,
        None => file.score.normalization.unwrap_or_default(),
    };
    let value = ami_labels(&a, &b, normalization)?;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "ami={value}");
    if args.contingency {
        let _ = write!(out, "{}", ContingencyTable::new(&a, &b)?.to_csv());
    }
    Ok(())
}
