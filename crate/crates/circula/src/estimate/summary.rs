//! Pooled posterior summaries and the split potential scale reduction
//! diagnostic.

use std::f64::consts::TAU;

use crate::angle::{mean_direction, Angle};
use crate::error::{CirculaError, Result};
use crate::model::{ModelShape, ModelSpec};

use super::metropolis::Chain;
use super::params::{expit, from_unconstrained};

/// Posterior summary of one parameter, on the constrained scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSummary {
    pub name: String,
    pub mean: f64,
    pub sd: f64,
    pub median: f64,
    pub rhat: f64,
}

/// Pooled multi-chain posterior summaries in reporting order, with one
/// acceptance rate per chain.
#[derive(Debug, Clone)]
pub struct ChainSummary {
    shape: ModelShape,
    pub params: Vec<ParamSummary>,
    pub accept_rates: Vec<f64>,
    pub n_chains: usize,
    pub draws_per_chain: usize,
}

impl ChainSummary {
    pub fn shape(&self) -> ModelShape {
        self.shape
    }

    /// Summary of the parameter called `name`, if present.
    pub fn param(&self, name: &str) -> Option<&ParamSummary> {
        self.params.iter().find(|p| p.name == name)
    }

    /// The model assembled from the posterior means.
    pub fn posterior_mean_model(&self) -> Result<ModelSpec> {
        let m = self.shape.m();
        let mut v = Vec::with_capacity(self.shape.param_count());
        for p in &self.params[..m] {
            v.push(p.mean.rem_euclid(TAU));
        }
        for p in &self.params[m..] {
            v.push(super::params::logit(p.mean.clamp(1e-12, 1.0 - 1e-9)));
        }
        from_unconstrained(self.shape, &v)
    }

    /// Plain-text table in reporting order, four decimals like the
    /// posterior summaries it mirrors.
    pub fn render_table(&self) -> String {
        let name_w = self
            .params
            .iter()
            .map(|p| p.name.len())
            .max()
            .unwrap_or(9)
            .max(9);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<name_w$} {:>9} {:>9} {:>9} {:>7}\n",
            "parameter", "mean", "sd", "median", "rhat"
        ));
        for p in &self.params {
            out.push_str(&format!(
                "{:<name_w$} {:>9.4} {:>9.4} {:>9.4} {:>7.3}\n",
                p.name, p.mean, p.sd, p.median, p.rhat
            ));
        }
        let rates = self
            .accept_rates
            .iter()
            .map(|r| format!("{r:.2}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{} chains x {} draws, acceptance rates: {rates}\n",
            self.n_chains, self.draws_per_chain
        ));
        out
    }
}

/// Pools post-warmup draws from all chains into per-parameter summaries.
///
/// Locations are summarized after recentering around the pooled mean
/// direction, so posteriors straddling zero are not torn apart;
/// concentrations are mapped back through the logistic function first.
pub fn summarize(shape: ModelShape, chains: &[Chain]) -> Result<ChainSummary> {
    if chains.is_empty() || chains.iter().any(|c| c.draws.is_empty()) {
        return Err(CirculaError::InvalidSpec(
            "summaries need at least one chain with at least one draw".into(),
        ));
    }
    let names = shape.param_names();
    let m = shape.m();
    let mut params = Vec::with_capacity(names.len());
    for (idx, name) in names.into_iter().enumerate() {
        // per-chain traces on the constrained scale
        let mut traces: Vec<Vec<f64>> = chains
            .iter()
            .map(|c| {
                c.draws
                    .iter()
                    .map(|d| if idx < m { d[idx] } else { expit(d[idx]) })
                    .collect()
            })
            .collect();
        if idx < m {
            recenter_circular(&mut traces)?;
        }
        let pooled: Vec<f64> = traces.iter().flatten().copied().collect();
        let mean = mean_of(&pooled);
        let sd = sd_of(&pooled, mean);
        let median = median_of(pooled);
        let rhat = split_rhat(&traces);
        let mean = if idx < m { mean.rem_euclid(TAU) } else { mean };
        let median = if idx < m {
            median.rem_euclid(TAU)
        } else {
            median
        };
        params.push(ParamSummary {
            name,
            mean,
            sd,
            median,
            rhat,
        });
    }
    Ok(ChainSummary {
        shape,
        params,
        accept_rates: chains.iter().map(|c| c.accept_rate).collect(),
        n_chains: chains.len(),
        draws_per_chain: chains[0].draws.len(),
    })
}

// Shifts angular draws into the half-turn window around the pooled mean
// direction; linear statistics are then meaningful.
fn recenter_circular(traces: &mut [Vec<f64>]) -> Result<()> {
    let all: Vec<Angle> = traces
        .iter()
        .flatten()
        .map(|&x| Angle::new(x))
        .collect::<Result<_>>()?;
    let center = mean_direction(&all)?.radians();
    for trace in traces.iter_mut() {
        for x in trace.iter_mut() {
            let mut d = (*x - center).rem_euclid(TAU);
            if d > std::f64::consts::PI {
                d -= TAU;
            }
            *x = center + d;
        }
    }
    Ok(())
}

/// Split potential scale reduction: each chain is halved, and R̂ compares
/// between- and within-half variances.
pub fn split_rhat(traces: &[Vec<f64>]) -> f64 {
    let mut halves: Vec<&[f64]> = Vec::with_capacity(traces.len() * 2);
    for t in traces {
        let half = t.len() / 2;
        if half == 0 {
            return f64::NAN;
        }
        halves.push(&t[..half]);
        halves.push(&t[half..2 * half]);
    }
    let m = halves.len() as f64;
    let n = halves[0].len() as f64;
    if n < 2.0 {
        return f64::NAN;
    }
    let means: Vec<f64> = halves.iter().map(|h| mean_of(h)).collect();
    let grand = mean_of(&means);
    let between = n / (m - 1.0) * means.iter().map(|x| (x - grand).powi(2)).sum::<f64>();
    let within = halves
        .iter()
        .zip(&means)
        .map(|(h, &hm)| h.iter().map(|x| (x - hm).powi(2)).sum::<f64>() / (n - 1.0))
        .sum::<f64>()
        / m;
    if within < 1e-300 {
        // all halves constant: chains agree exactly
        return if between < 1e-300 { 1.0 } else { f64::INFINITY };
    }
    (((n - 1.0) / n * within + between / n) / within).sqrt()
}

fn mean_of(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sd_of(xs: &[f64], mean: f64) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn median_of(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite draws"));
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
