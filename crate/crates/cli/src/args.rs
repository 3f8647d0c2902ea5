use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hlouvain", version, about = "Community detection in hypergraphs with h-Louvain")]
pub struct Cli {
    /// Master seed for every random choice of the command.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for independent runs (1 = sequential).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON file with defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run h-Louvain several times and keep the best partition.
    Cluster(ClusterArgs),
    /// Tune (p_b, p_c) by Bayesian optimization.
    Tune(TuneArgs),
    /// Edge-composition table and τ recommendation.
    Eda(EdaArgs),
    /// Generate a synthetic hypergraph with ground truth.
    Generate(GenerateArgs),
    /// Adjusted mutual information of two partition files.
    Score(ScoreArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemeArg {
    TotalWeight,
    DegreePreserving,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EndingArg {
    SupernodeDefault,
    LocalOptOriginal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WcdArg {
    Majority,
    Linear,
    Strict,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormalizationArg {
    Arithmetic,
    Geometric,
    Max,
    Min,
}

#[derive(Debug, Clone, Args)]
pub struct ObjectiveArgs {
    /// τ-modularity exponent.
    #[arg(long, conflicts_with_all = ["strict", "eta_file"])]
    pub tau: Option<f64>,
    /// Strict modularity (only pure edges count).
    #[arg(long, conflicts_with = "eta_file")]
    pub strict: bool,
    /// JSON object mapping edge size to η values for ascending majority counts.
    #[arg(long)]
    pub eta_file: Option<PathBuf>,
    /// Resolution γ of the degree tax.
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Weighting of the 2-section graph.
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    #[arg(long)]
    pub pb: Option<f64>,
    #[arg(long)]
    pub pc: Option<f64>,
    /// Number of runs, with seeds seed..seed+runs-1.
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long, value_enum)]
    pub ending: Option<EndingArg>,
    /// Partition output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    #[arg(long)]
    pub init: Option<usize>,
    #[arg(long)]
    pub min_evals: Option<usize>,
    #[arg(long)]
    pub max_evals: Option<usize>,
    #[arg(long)]
    pub patience: Option<usize>,
    /// Best partition output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tuning trace CSV; defaults to `<out>.trace.csv` when `--out` is set.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EdaArgs {
    pub input: PathBuf,
    /// Partition to tabulate; a 2-section Louvain partition is used otherwise.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Louvain runs for the quick clustering.
    #[arg(long)]
    pub runs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub degree_exponent: Option<f64>,
    #[arg(long)]
    pub degree_min: Option<usize>,
    #[arg(long)]
    pub degree_max: Option<usize>,
    #[arg(long)]
    pub community_exponent: Option<f64>,
    #[arg(long)]
    pub community_min: Option<usize>,
    #[arg(long)]
    pub community_max: Option<usize>,
    /// Fraction ξ of background edges.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Edge-size distribution as `d:q` pairs, e.g. `2:0.1,3:0.4,4:0.4,5:0.1`.
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, value_enum, conflicts_with = "wcd_file")]
    pub wcd: Option<WcdArg>,
    /// JSON object mapping edge size to weights for ascending majority counts.
    #[arg(long)]
    pub wcd_file: Option<PathBuf>,
    /// `k,d`: add k edges of size d inside the two smallest communities.
    #[arg(long)]
    pub inject_local_noise: Option<String>,
    /// Writes `<prefix>.hyper`, `<prefix>.truth` and `<prefix>.json`.
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(long, value_enum)]
    pub normalization: Option<NormalizationArg>,
    /// Also print the contingency table.
    #[arg(long)]
    pub contingency: bool,
}
