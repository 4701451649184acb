//! JSON posterior summaries with run metadata.

use std::fs;
use std::path::Path;

use circula::{ChainSummary, McmcConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryFile {
    pub parameters: Vec<ParamRow>,
    pub run: RunInfo,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamRow {
    pub name: String,
    pub mean: f64,
    pub sd: f64,
    pub median: f64,
    pub rhat: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunInfo {
    pub chains: usize,
    pub iterations: usize,
    pub warmup: usize,
    pub thinning: usize,
    pub seed: u64,
    pub data_path: String,
}

impl SummaryFile {
    pub fn from_summary(summary: &ChainSummary, config: &McmcConfig, data_path: &str) -> Self {
        Self {
            parameters: summary
                .params
                .iter()
                .map(|p| ParamRow {
                    name: p.name.clone(),
                    mean: p.mean,
                    sd: p.sd,
                    median: p.median,
                    rhat: p.rhat,
                })
                .collect(),
            run: RunInfo {
                chains: config.chains,
                iterations: config.iterations,
                warmup: config.warmup,
                thinning: config.thinning,
                seed: config.seed,
                data_path: data_path.to_string(),
            },
        }
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("serializable summary");
        text.push('\n');
        fs::write(path, text)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}
