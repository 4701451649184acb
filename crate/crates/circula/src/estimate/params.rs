//! Mapping between a model and its unconstrained parameter vector.
//!
//! Order: marginal locations (kept as angles, proposals wrapped), marginal
//! concentrations (logit), cross-sectional binding concentrations in
//! row-major l1 > l2 order (logit), serial binding concentrations lag by
//! lag (logit). Length 2m + m(m−1)/2 + m²p. Twists are structural flags,
//! not parameters; unpacking builds every pair with q = +1.

use crate::angle::Angle;
use crate::error::{CirculaError, Result};
use crate::model::{ModelShape, ModelSpec};
use crate::pair::PairCircula;
use crate::wrapped_cauchy::WrappedCauchy;

// Concentrations at exactly zero map to this floor so the logit stays
// finite; the round trip then differs by at most the floor itself.
const RHO_FLOOR: f64 = 1e-12;

/// Packs a model into its unconstrained vector.
pub fn to_unconstrained(model: &ModelSpec) -> Vec<f64> {
    let shape = model.shape();
    let mut v = Vec::with_capacity(shape.param_count());
    for wc in model.marginals() {
        v.push(wc.mu().radians());
    }
    for wc in model.marginals() {
        v.push(logit(wc.rho()));
    }
    for pc in model.cross_pairs().iter().chain(model.serial_pairs()) {
        v.push(logit(pc.binding_rho()));
    }
    v
}

/// Rebuilds a model from an unconstrained vector of length
/// `shape.param_count()`.
pub fn from_unconstrained(shape: ModelShape, v: &[f64]) -> Result<ModelSpec> {
    if v.len() != shape.param_count() {
        return Err(CirculaError::InvalidSpec(format!(
            "parameter vector has length {}, shape needs {}",
            v.len(),
            shape.param_count()
        )));
    }
    if let Some(&bad) = v.iter().find(|x| !x.is_finite()) {
        return Err(CirculaError::NonFinite {
            what: "parameter",
            value: bad,
        });
    }
    let m = shape.m();
    let marginals = (0..m)
        .map(|j| WrappedCauchy::new(Angle::new(v[j])?, expit(v[m + j])))
        .collect::<Result<Vec<_>>>()?;
    let pairs = v[2 * m..]
        .iter()
        .map(|&z| PairCircula::new(1, expit(z)))
        .collect::<Result<Vec<_>>>()?;
    let n_cross = m * (m - 1) / 2;
    ModelSpec::new(
        shape,
        marginals,
        pairs[..n_cross].to_vec(),
        pairs[n_cross..].to_vec(),
    )
}

pub(crate) fn logit(rho: f64) -> f64 {
    let r = rho.max(RHO_FLOOR);
    (r / (1.0 - r)).ln()
}

pub(crate) fn expit(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}
