//! Posterior density on the unconstrained parameter scale.
//!
//! The prior is flat: uniform on [0, 2π) for every location, uniform on
//! (0, 1) for every concentration. Concentrations are sampled on the logit
//! scale, so the prior carries the logit Jacobian σ(z)(1 − σ(z)) and the
//! sampler targets the flat prior in constrained space.

use std::f64::consts::TAU;

use crate::error::Result;
use crate::model::ModelShape;
use crate::series::CircularSeries;
use crate::vine::joint_log_density;

use super::params::from_unconstrained;

/// Log posterior (up to a constant) of the unconstrained vector `v`.
pub fn log_posterior(shape: ModelShape, v: &[f64], data: &CircularSeries) -> Result<f64> {
    let model = from_unconstrained(shape, v)?;
    Ok(joint_log_density(&model, data)? + log_prior(shape, v))
}

/// Log prior density of `v` on the unconstrained scale.
pub fn log_prior(shape: ModelShape, v: &[f64]) -> f64 {
    let m = shape.m();
    let mut lp = -(m as f64) * TAU.ln();
    for &z in &v[m..] {
        // log σ(z) + log(1 − σ(z)), written with softplus for stability
        lp -= softplus(z) + softplus(-z);
    }
    lp
}

// Proposals outside the admissible region (a concentration at or above the
// cap) score minus infinity and are rejected by the sampler.
pub(crate) fn log_posterior_or_neg_inf(shape: ModelShape, v: &[f64], data: &CircularSeries) -> f64 {
    match log_posterior(shape, v, data) {
        Ok(lp) if lp.is_finite() => lp,
        _ => f64::NEG_INFINITY,
    }
}

fn softplus(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}
