//! Random-walk Metropolis with warmup-only global scale adaptation.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{CirculaError, Result};
use crate::model::ModelShape;
use crate::series::CircularSeries;

use super::posterior::{log_posterior, log_posterior_or_neg_inf};
use super::McmcConfig;

/// Draws from one chain, stored on the unconstrained scale.
#[derive(Debug, Clone)]
pub struct Chain {
    pub draws: Vec<Vec<f64>>,
    pub accept_rate: f64,
}

// Adaptation steers the acceptance probability here during warmup and is
// frozen afterwards, which keeps the post-warmup kernel a valid
// Metropolis kernel.
const TARGET_ACCEPT: f64 = 0.3;

/// Shape of the random-walk proposal increment before the global scale is
/// applied. Any fixed shape keeps the kernel symmetric.
#[derive(Debug, Clone)]
pub enum ProposalShape {
    /// Independent unit-variance steps in every coordinate.
    Spherical,
    /// Independent steps with one width per coordinate.
    PerComponent(Vec<f64>),
    /// Dense square root of a target covariance; the step is `root · ε`.
    CovarianceRoot(Vec<Vec<f64>>),
}

impl ProposalShape {
    fn validate(&self, dim: usize) -> Result<()> {
        let ok = match self {
            ProposalShape::Spherical => true,
            ProposalShape::PerComponent(s) => {
                s.len() == dim && s.iter().all(|x| x.is_finite() && *x > 0.0)
            }
            ProposalShape::CovarianceRoot(rows) => {
                rows.len() == dim
                    && rows
                        .iter()
                        .all(|r| r.len() == dim && r.iter().all(|x| x.is_finite()))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(CirculaError::InvalidSpec(
                "proposal shape must be finite and match the parameter count".into(),
            ))
        }
    }

    fn step_into(&self, noise: &[f64], step: &mut [f64]) {
        match self {
            ProposalShape::Spherical => step.copy_from_slice(noise),
            ProposalShape::PerComponent(s) => {
                for ((out, &w), &e) in step.iter_mut().zip(s).zip(noise) {
                    *out = w * e;
                }
            }
            ProposalShape::CovarianceRoot(rows) => {
                for (out, row) in step.iter_mut().zip(rows) {
                    *out = row.iter().zip(noise).map(|(r, e)| r * e).sum();
                }
            }
        }
    }
}

/// Runs one random-walk Metropolis chain from `init`, recording every
/// `thinning`-th post-warmup state. Deterministic for a fixed `chain_seed`.
pub fn run_chain(
    shape: ModelShape,
    data: &CircularSeries,
    config: &McmcConfig,
    chain_seed: u64,
    init: &[f64],
) -> Result<Chain> {
    run_chain_shaped(
        shape,
        data,
        config,
        chain_seed,
        init,
        &ProposalShape::Spherical,
    )
}

/// As [`run_chain`], with an explicit proposal shape; the global scale is
/// still the only adapted quantity.
pub fn run_chain_shaped(
    shape: ModelShape,
    data: &CircularSeries,
    config: &McmcConfig,
    chain_seed: u64,
    init: &[f64],
    proposal_shape: &ProposalShape,
) -> Result<Chain> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(chain_seed);
    let dim = shape.param_count();
    if init.len() != dim {
        return Err(CirculaError::InvalidSpec(format!(
            "init vector has length {}, shape needs {dim}",
            init.len()
        )));
    }
    proposal_shape.validate(dim)?;
    let mut state = init.to_vec();
    let mut state_lp = log_posterior(shape, &state, data)?;
    if !state_lp.is_finite() {
        return Err(CirculaError::InvalidSpec(
            "log posterior is not finite at the initial point".into(),
        ));
    }

    let m = shape.m();
    let kept = (config.iterations - config.warmup) / config.thinning;
    let mut draws = Vec::with_capacity(kept);
    let mut log_scale = config.proposal_scale.ln();
    let mut proposal = vec![0.0; dim];
    let mut noise = vec![0.0; dim];
    let mut step = vec![0.0; dim];
    let mut accepted_after_warmup = 0usize;

    for it in 1..=config.iterations {
        let scale = log_scale.exp();
        for e in noise.iter_mut() {
            *e = rng.sample(StandardNormal);
        }
        proposal_shape.step_into(&noise, &mut step);
        for (c, ((p, &x), &dx)) in proposal.iter_mut().zip(&state).zip(&step).enumerate() {
            let mut y = x + scale * dx;
            if c < m {
                // locations live on the circle
                y = y.rem_euclid(TAU);
                if y >= TAU {
                    y = 0.0;
                }
            }
            *p = y;
        }
        let proposal_lp = log_posterior_or_neg_inf(shape, &proposal, data);
        let log_alpha = (proposal_lp - state_lp).min(0.0);
        let alpha = log_alpha.exp();
        if rng.random::<f64>() < alpha {
            state.copy_from_slice(&proposal);
            state_lp = proposal_lp;
            if it > config.warmup {
                accepted_after_warmup += 1;
            }
        }
        if it <= config.warmup {
            // Robbins-Monro on the log scale, decaying gain
            log_scale += (it as f64).powf(-0.6) * (alpha - TARGET_ACCEPT);
        } else {
            let since = it - config.warmup;
            if since.is_multiple_of(config.thinning) {
                draws.push(state.clone());
            }
        }
    }

    let post = config.iterations - config.warmup;
    Ok(Chain {
        draws,
        accept_rate: if post > 0 {
            accepted_after_warmup as f64 / post as f64
        } else {
            0.0
        },
    })
}
