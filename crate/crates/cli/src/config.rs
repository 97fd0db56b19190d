//! Run configuration file (TOML) and data-path resolution.

use expertrank_core::Score;
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Default data directory for relative corpus/judgments paths.
pub const DATA_DIR_ENV: &str = "EXPERTRANK_DATA_DIR";

/// TOML run configuration; every field optional, flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub corpus: Option<String>,
    pub judgments: Option<String>,
    pub method: Option<String>,
    pub features: Option<String>,
    pub seed: Option<u64>,
    pub now_year: Option<i32>,
    pub pagerank_tolerance: Option<Score>,
    pub pagerank_max_iterations: Option<usize>,
    pub bm25_aggregation: Option<String>,
    pub edge_weighting: Option<String>,
    pub dump_pagerank: Option<bool>,
    pub out: Option<String>,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<RunConfigFile, String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        toml::from_str(&text).map_err(|e| e.to_string())
    }
}

/// Resolve a data path against `EXPERTRANK_DATA_DIR` when it is relative and
/// does not exist as given.
pub fn resolve_data_path(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(base) => PathBuf::from(base).join(path),
        None => path.to_path_buf(),
    }
}
