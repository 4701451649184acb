//! Implementations behind the four subcommands. Each returns its result;
//! stdout rendering happens in `main`.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use circula::vine::{joint_log_density, simulate};
use circula::{fit, ChainSummary, McmcConfig};

use crate::dataset::{load_csv, Dataset};
use crate::model_file::ModelFile;
use crate::summary_file::SummaryFile;

pub struct FitOptions {
    pub data: PathBuf,
    pub p: usize,
    pub config: McmcConfig,
    pub out: Option<PathBuf>,
}

/// Fits the model and, when requested, writes the summary file.
pub fn cmd_fit(opts: &FitOptions) -> anyhow::Result<(ChainSummary, SummaryFile)> {
    let dataset = load_csv(&opts.data)?;
    let summary = fit(&dataset.series, opts.p, &opts.config)?;
    let file = SummaryFile::from_summary(&summary, &opts.config, &opts.data.display().to_string());
    if let Some(out) = &opts.out {
        file.save(out)
            .with_context(|| format!("cannot write {}", out.display()))?;
    }
    Ok((summary, file))
}

/// Draws a series from a model file; column names are series_1..series_m.
pub fn cmd_simulate(model_path: &Path, n_times: usize, seed: u64) -> anyhow::Result<Dataset> {
    let spec = ModelFile::load(model_path)?.to_spec()?;
    let series = simulate(&spec, n_times, seed)?;
    let names = (1..=spec.shape().m())
        .map(|j| format!("series_{j}"))
        .collect();
    Ok(Dataset { names, series })
}

/// Joint log density of the dataset under the model.
pub fn cmd_loglik(model_path: &Path, data_path: &Path) -> anyhow::Result<f64> {
    let spec = ModelFile::load(model_path)?.to_spec()?;
    let dataset = load_csv(data_path)?;
    Ok(joint_log_density(&spec, &dataset.series)?)
}

/// One histogram row: bin edges, count, relative frequency and, when a
/// model is supplied, the fitted marginal density at the bin midpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RoseRow {
    pub bin_start: f64,
    pub bin_end: f64,
    pub count: usize,
    pub relative_frequency: f64,
    pub fitted_density: Option<f64>,
}

pub struct RoseOptions {
    pub data: PathBuf,
    pub column: String,
    pub bins: usize,
    pub model: Option<PathBuf>,
}

/// Equal-width polar histogram of one column, bins starting at zero.
pub fn cmd_rose(opts: &RoseOptions) -> anyhow::Result<Vec<RoseRow>> {
    if opts.bins < 2 {
        bail!("--bins must be at least 2, got {}", opts.bins);
    }
    let dataset = load_csv(&opts.data)?;
    let Some(col) = dataset.column_index(&opts.column) else {
        bail!(
            "unknown column \"{}\"; available columns: {}",
            opts.column,
            dataset.names.join(", ")
        );
    };
    let marginal = match &opts.model {
        None => None,
        Some(path) => {
            let spec = ModelFile::load(path)?.to_spec()?;
            if spec.shape().m() != dataset.series.n_series() {
                bail!(
                    "model has {} series, dataset has {}",
                    spec.shape().m(),
                    dataset.series.n_series()
                );
            }
            Some(*spec.marginal(col))
        }
    };

    let values = dataset.series.column(col);
    let total = values.len();
    let width = TAU / opts.bins as f64;
    let mut counts = vec![0usize; opts.bins];
    for v in &values {
        let mut b = (v.radians() / width) as usize;
        if b >= opts.bins {
            b = opts.bins - 1;
        }
        counts[b] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(b, count)| {
            let bin_start = b as f64 * width;
            let bin_end = bin_start + width;
            let midpoint = bin_start + 0.5 * width;
            RoseRow {
                bin_start,
                bin_end,
                count,
                relative_frequency: count as f64 / total as f64,
                fitted_density: marginal
                    .as_ref()
                    .map(|wc| wc.density(circula::Angle::new(midpoint).expect("finite midpoint"))),
            }
        })
        .collect())
}

/// CSV rendering of the histogram rows.
pub fn render_rose(rows: &[RoseRow]) -> String {
    let with_fit = rows.iter().any(|r| r.fitted_density.is_some());
    let mut out = String::from("bin_start_rad,bin_end_rad,count,relative_frequency");
    if with_fit {
        out.push_str(",fitted_density");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{:.6},{:.6},{},{:.6}",
            r.bin_start, r.bin_end, r.count, r.relative_frequency
        ));
        if let Some(f) = r.fitted_density {
            out.push_str(&format!(",{f:.6}"));
        }
        out.push('\n');
    }
    out
}
