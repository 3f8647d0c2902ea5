use std::collections::BTreeMap;
use std::path::Path;

use hlouvain_core::hlouvain::Ending;
use hlouvain_core::hypercore::TwoSectionScheme;
use hlouvain_core::metrics::AmiNormalization;
use serde::Deserialize;

use crate::CliError;

/// Contents of the `--config` JSON file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    #[serde(default)]
    pub objective: ObjectiveConfigFile,
    #[serde(default)]
    pub cluster: ClusterConfigFile,
    #[serde(default)]
    pub tune: TuneConfigFile,
    #[serde(default)]
    pub eda: EdaConfigFile,
    #[serde(default)]
    pub generate: GenerateConfigFile,
    #[serde(default)]
    pub score: ScoreConfigFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveConfigFile {
    pub tau: Option<f64>,
    pub strict: Option<bool>,
    pub eta: Option<BTreeMap<usize, Vec<f64>>>,
    pub resolution: Option<f64>,
    pub scheme: Option<TwoSectionScheme>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterConfigFile {
    pub p_b: Option<f64>,
    pub p_c: Option<f64>,
    pub runs: Option<usize>,
    pub ending: Option<Ending>,
    pub max_sweeps_per_level: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuneConfigFile {
    pub init_points: Option<usize>,
    pub min_evaluations: Option<usize>,
    pub max_evaluations: Option<usize>,
    pub seeds: Option<Vec<u64>>,
    pub p_b_range: Option<(f64, f64)>,
    pub p_c_range: Option<(f64, f64)>,
    pub patience: Option<usize>,
    pub min_improvement: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdaConfigFile {
    pub runs: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateConfigFile {
    pub n: Option<usize>,
    pub degree_exponent: Option<f64>,
    pub degree_range: Option<(usize, usize)>,
    pub community_exponent: Option<f64>,
    pub community_range: Option<(usize, usize)>,
    pub noise: Option<f64>,
    pub size_distribution: Option<Vec<(usize, f64)>>,
    pub wcd_model: Option<hlouvain_core::habcd::WcdModel>,
    pub inject_local_noise: Option<(usize, usize)>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreConfigFile {
    pub normalization: Option<AmiNormalization>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Flag(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Flag(format!("invalid config {}: {e}", path.display())))
        }
    }
}

/// Reads a JSON object mapping edge sizes to number lists.
pub fn read_rows(path: &Path) -> Result<BTreeMap<usize, Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}
