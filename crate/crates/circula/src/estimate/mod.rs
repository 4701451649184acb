//! Bayesian fitting: multi-chain adaptive random-walk Metropolis over the
//! unconstrained parameter scale, with pooled posterior summaries.

mod metropolis;
mod params;
mod posterior;
mod simplex;
mod summary;

pub use metropolis::{run_chain, run_chain_shaped, Chain, ProposalShape};
pub use params::{from_unconstrained, to_unconstrained};
pub use posterior::{log_posterior, log_prior};
pub use simplex::map_estimate;
pub use summary::{split_rhat, summarize, ChainSummary, ParamSummary};

use posterior::log_posterior_or_neg_inf;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::angle::{mean_direction, resultant_length};
use crate::error::{CirculaError, Result};
use crate::model::{ModelShape, ModelSpec};
use crate::pair::PairCircula;
use crate::series::CircularSeries;
use crate::wrapped_cauchy::WrappedCauchy;

/// Sampler settings. The defaults are 3 chains of 3000 iterations with a
/// warmup of 100 and no thinning.
#[derive(Debug, Clone, PartialEq)]
pub struct McmcConfig {
    pub chains: usize,
    pub iterations: usize,
    pub warmup: usize,
    pub thinning: usize,
    pub seed: u64,
    /// Initial proposal standard deviation; adapted during warmup.
    pub proposal_scale: f64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self {
            chains: 3,
            iterations: 3000,
            warmup: 100,
            thinning: 1,
            seed: 1,
            proposal_scale: 0.1,
        }
    }
}

impl McmcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.chains == 0 {
            return Err(CirculaError::InvalidSpec("need at least one chain".into()));
        }
        if self.thinning == 0 {
            return Err(CirculaError::InvalidSpec("thinning must be >= 1".into()));
        }
        if self.warmup >= self.iterations {
            return Err(CirculaError::InvalidSpec(format!(
                "warmup {} must be smaller than iterations {}",
                self.warmup, self.iterations
            )));
        }
        if !self.proposal_scale.is_finite() || self.proposal_scale <= 0.0 {
            return Err(CirculaError::InvalidSpec(
                "proposal scale must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Fits a model of order `p` to `data`: moment start, simplex polish, then
/// `config.chains` Metropolis chains from jittered starting points with
/// per-chain sub-seeds. Proposals are preconditioned by curvature scales
/// taken at the posterior mode. Deterministic for a fixed `config.seed`.
pub fn fit(data: &CircularSeries, p: usize, config: &McmcConfig) -> Result<ChainSummary> {
    config.validate()?;
    let shape = ModelShape::new(data.n_series(), p)?;
    let start = to_unconstrained(&moment_init(shape, data)?);
    let start = map_estimate(shape, data, &start)?;
    let proposal_shape = mode_preconditioner(shape, data, &start);
    let jitter_widths = shape_widths(&proposal_shape, shape.param_count());

    let mut master = ChaCha12Rng::seed_from_u64(config.seed);
    let mut chains = Vec::with_capacity(config.chains);
    let m = shape.m();
    for _ in 0..config.chains {
        let chain_seed: u64 = master.random();
        let init: Vec<f64> = start
            .iter()
            .zip(&jitter_widths)
            .enumerate()
            .map(|(idx, (&x, &s))| {
                let jittered = x + 0.5 * s * standard_normal(&mut master);
                if idx < m {
                    jittered
                } else {
                    // keep concentration logits strictly inside the cap
                    jittered.clamp(-20.0, 20.0)
                }
            })
            .collect();
        chains.push(run_chain_shaped(
            shape,
            data,
            config,
            chain_seed,
            &init,
            &proposal_shape,
        )?);
    }
    summarize(shape, &chains)
}

// Proposal covariance from the curvature of the log posterior at the mode:
// a finite-difference Hessian, negated, regularized until it admits a
// Cholesky factor, then inverted into a covariance square root. The
// posterior is strongly correlated between locations and bindings, so a
// dense shape mixes far better than per-component widths. Falls back to
// spherical proposals when the curvature is unusable.
fn mode_preconditioner(shape: ModelShape, data: &CircularSeries, mode: &[f64]) -> ProposalShape {
    let dim = mode.len();
    let h = 0.02;
    let eval = |point: &[f64]| log_posterior_or_neg_inf(shape, point, data);
    let center = eval(mode);
    if !center.is_finite() {
        return ProposalShape::Spherical;
    }

    let mut point = mode.to_vec();
    let mut hessian = vec![vec![0.0f64; dim]; dim];
    for i in 0..dim {
        point[i] = mode[i] + h;
        let up = eval(&point);
        point[i] = mode[i] - h;
        let down = eval(&point);
        point[i] = mode[i];
        hessian[i][i] = (up - 2.0 * center + down) / (h * h);
    }
    for i in 0..dim {
        for j in 0..i {
            point[i] = mode[i] + h;
            point[j] = mode[j] + h;
            let pp = eval(&point);
            point[j] = mode[j] - h;
            let pm = eval(&point);
            point[i] = mode[i] - h;
            let mm = eval(&point);
            point[j] = mode[j] + h;
            let mp = eval(&point);
            point[i] = mode[i];
            point[j] = mode[j];
            let mixed = (pp - pm - mp + mm) / (4.0 * h * h);
            hessian[i][j] = mixed;
            hessian[j][i] = mixed;
        }
    }
    if hessian.iter().any(|row| row.iter().any(|x| !x.is_finite())) {
        return ProposalShape::Spherical;
    }

    // precision candidate: A = -H, nudged toward positive definiteness
    let mut precision = vec![vec![0.0f64; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            precision[i][j] = -hessian[i][j];
        }
    }
    let max_diag = precision
        .iter()
        .enumerate()
        .map(|(i, row)| row[i].abs())
        .fold(1.0, f64::max);
    let mut ridge = 1e-8 * max_diag;
    for _ in 0..40 {
        let mut candidate = precision.clone();
        for (i, row) in candidate.iter_mut().enumerate() {
            row[i] += ridge;
        }
        if let Some(factor) = cholesky(&candidate) {
            let root = invert_transposed_lower(&factor);
            return ProposalShape::CovarianceRoot(root);
        }
        ridge *= 10.0;
    }
    ProposalShape::Spherical
}

// Lower-triangular factor L with L·Lᵀ = A, or None if A is not positive
// definite.
fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for (lik, ljk) in l[i][..j].iter().zip(&l[j][..j]) {
                sum -= lik * ljk;
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

// Given the lower factor L of the precision, returns R = (Lᵀ)⁻¹ so that
// R·Rᵀ equals the covariance (L·Lᵀ)⁻¹.
fn invert_transposed_lower(l: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    // columns of R solve Lᵀ·col = e_k by back substitution
    let mut r = vec![vec![0.0f64; n]; n];
    for k in 0..n {
        let mut col = vec![0.0f64; n];
        col[k] = 1.0;
        for i in (0..n).rev() {
            let mut sum = col[i];
            for j in i + 1..n {
                sum -= l[j][i] * col[j];
            }
            col[i] = sum / l[i][i];
        }
        for (i, v) in col.into_iter().enumerate() {
            r[i][k] = v;
        }
    }
    r
}

// Per-coordinate marginal widths of the proposal shape, used to jitter the
// chain starting points.
fn shape_widths(proposal_shape: &ProposalShape, dim: usize) -> Vec<f64> {
    match proposal_shape {
        ProposalShape::Spherical => vec![0.1; dim],
        ProposalShape::PerComponent(s) => s.clone(),
        ProposalShape::CovarianceRoot(rows) => rows
            .iter()
            .map(|row| row.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect(),
    }
}

// Column-wise circular moments seed the marginals; bindings start weak.
fn moment_init(shape: ModelShape, data: &CircularSeries) -> Result<ModelSpec> {
    let m = shape.m();
    let mut marginals = Vec::with_capacity(m);
    for j in 0..m {
        let col = data.column(j);
        let mu = mean_direction(&col)?;
        let rho = resultant_length(&col)?.clamp(0.02, 0.95);
        marginals.push(WrappedCauchy::new(mu, rho)?);
    }
    let cross = vec![PairCircula::new(1, 0.05)?; m * (m - 1) / 2];
    let serial = vec![PairCircula::new(1, 0.05)?; m * m * shape.p()];
    ModelSpec::new(shape, marginals, cross, serial)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample::<f64, _>(rand_distr::StandardNormal)
}
