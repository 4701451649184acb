//! The wrapped Cauchy distribution.
//!
//! wC(θ; μ, ρ) has density (1/2π)(1−ρ²)/(1+ρ²−2ρcos(θ−μ)) on `[0, 2π)`,
//! with mean direction μ and mean resultant length ρ. It is one of the few
//! circular families with a closed-form distribution function, which is why
//! it does all the work here: the arccos expression covers the half circle
//! from the location and extends to the other half by the symmetry
//! G₀(δ) = 1 − G₀(2π − δ).

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::angle::Angle;
use crate::error::{CirculaError, Result};

/// Largest admissible concentration; the density degenerates as ρ → 1.
pub const MAX_RHO: f64 = 1.0 - 1e-9;

/// Refinement threshold for the closed-form quantile; when the inverted
/// arccos expression misses the target probability by more than this, a
/// bisection pass takes over.
const QUANTILE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrappedCauchy {
    mu: Angle,
    rho: f64,
}

impl WrappedCauchy {
    /// A wrapped Cauchy with mean direction `mu` and concentration
    /// `rho ∈ [0, 1 − 1e−9)`. `rho = 0` is the circular uniform.
    pub fn new(mu: Angle, rho: f64) -> Result<Self> {
        if !rho.is_finite() {
            return Err(CirculaError::NonFinite {
                what: "concentration",
                value: rho,
            });
        }
        if !(0.0..MAX_RHO).contains(&rho) {
            return Err(CirculaError::OutOfRange {
                what: "concentration",
                range: "[0, 1 - 1e-9)",
                value: rho,
            });
        }
        Ok(Self { mu, rho })
    }

    /// The circular uniform distribution.
    pub fn uniform() -> Self {
        Self {
            mu: Angle::ZERO,
            rho: 0.0,
        }
    }

    pub fn mu(&self) -> Angle {
        self.mu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn density(&self, theta: Angle) -> f64 {
        let delta = theta.radians() - self.mu.radians();
        (1.0 - self.rho * self.rho) / (TAU * chord_sq(self.rho, delta))
    }

    pub fn log_density(&self, theta: Angle) -> f64 {
        let delta = theta.radians() - self.mu.radians();
        (1.0 - self.rho * self.rho).ln() - chord_sq(self.rho, delta).ln() - TAU.ln()
    }

    /// Distribution function with origin 0: F(θ) = ∫₀^θ wC(u; μ, ρ) du.
    ///
    /// Assembled from the standardized CDF by arc subtraction modulo one,
    /// so F(0) = 0 and F increases to 1 over a full turn.
    pub fn cdf(&self, theta: Angle) -> f64 {
        let from_loc = standard_cdf_raw(wrap_raw(theta.radians() - self.mu.radians()), self.rho);
        let origin = standard_cdf_raw(wrap_raw(-self.mu.radians()), self.rho);
        cdf_arc(from_loc, origin)
    }

    /// Inverse of [`Self::cdf`] for `p ∈ [0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<Angle> {
        if !p.is_finite() || !(0.0..1.0).contains(&p) {
            return Err(CirculaError::OutOfRange {
                what: "probability",
                range: "[0, 1)",
                value: p,
            });
        }
        let origin = standard_cdf_raw(wrap_raw(-self.mu.radians()), self.rho);
        let mut q = p + origin;
        if q >= 1.0 {
            q -= 1.0;
        }
        let delta = standard_quantile(q, self.rho);
        Ok(Angle::wrap_unchecked(self.mu.radians() + delta))
    }

    /// Draws one value by inversion.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Angle {
        let u: f64 = rng.random();
        self.quantile(u).expect("u lies in [0, 1)")
    }
}

/// Standardized distribution function G₀(δ; ρ) = P(Δ ≤ δ) for Δ ~ wC(0, ρ),
/// with δ measured from the location.
pub fn standard_cdf(delta: Angle, rho: f64) -> f64 {
    standard_cdf_raw(delta.radians(), rho)
}

// The arccos expression on [0, π] with the reflection G₀(δ) = 1 − G₀(2π − δ)
// on (π, 2π) collapses to a single half-angle form,
//     G₀(δ) = (1/π)·atan2((1+ρ)·sin(δ/2), (1−ρ)·cos(δ/2)),
// which stays well conditioned where acos of a near-one argument would not.
// Accepts the closed interval [0, 2π] so bisection can probe the right edge.
fn standard_cdf_raw(delta: f64, rho: f64) -> f64 {
    debug_assert!((0.0..=TAU).contains(&delta));
    let (s, c) = (0.5 * delta).sin_cos();
    ((1.0 + rho) * s).atan2((1.0 - rho) * c) / PI
}

/// δ ∈ [0, 2π) with G₀(δ) = q: the half-angle inverse of the arccos
/// expression, with a bisection fallback should the closed form ever miss.
fn standard_quantile(q: f64, rho: f64) -> f64 {
    let (s, c) = (PI * q).sin_cos();
    let mut delta = 2.0 * ((1.0 - rho) * s).atan2((1.0 + rho) * c);
    if (standard_cdf_raw(delta, rho) - q).abs() > QUANTILE_TOL {
        let (mut lo, mut hi) = (0.0, TAU);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if standard_cdf_raw(mid, rho) < q {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        delta = 0.5 * (lo + hi);
    }
    if delta >= TAU {
        0.0
    } else {
        delta
    }
}

/// 1 + ρ² − 2ρcos(δ) = |1 − ρe^{iδ}|², evaluated as (1−ρ)² + 4ρsin²(δ/2)
/// so the value stays positive without cancellation as ρ → 1, δ → 0.
pub(crate) fn chord_sq(rho: f64, delta: f64) -> f64 {
    let s = (0.5 * delta).sin();
    (1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s
}

/// Difference of two CDF values along the circle, shifted into [0, 1).
fn cdf_arc(hi: f64, lo: f64) -> f64 {
    let d = hi - lo;
    if d < 0.0 {
        d + 1.0
    } else {
        d
    }
}

fn wrap_raw(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn angle(x: f64) -> Angle {
        Angle::new(x).unwrap()
    }

    #[test]
    fn rejects_bad_concentration() {
        assert!(WrappedCauchy::new(Angle::ZERO, 1.0).is_err());
        assert!(WrappedCauchy::new(Angle::ZERO, 1.0 - 1e-10).is_err());
        assert!(WrappedCauchy::new(Angle::ZERO, -0.1).is_err());
        assert!(WrappedCauchy::new(Angle::ZERO, f64::NAN).is_err());
        assert!(WrappedCauchy::new(Angle::ZERO, 0.0).is_ok());
    }

    #[test]
    fn density_uniform_case() {
        let wc = WrappedCauchy::uniform();
        for x in [0.0, 1.0, 3.0, 6.0] {
            assert_abs_diff_eq!(wc.density(angle(x)), 1.0 / TAU, epsilon = 1e-15);
        }
    }

    #[test]
    fn density_at_location_and_antipode() {
        let wc = WrappedCauchy::new(angle(1.3), 0.5).unwrap();
        assert_abs_diff_eq!(wc.density(angle(1.3)), 3.0 / TAU, epsilon = 1e-13);
        assert_abs_diff_eq!(
            wc.density(angle(1.3 + PI)),
            1.0 / (6.0 * PI),
            epsilon = 1e-13
        );
    }

    #[test]
    fn log_density_matches_density() {
        let wc = WrappedCauchy::new(angle(2.2), 0.83).unwrap();
        for x in [0.0, 0.7, 2.2, 4.4, 6.1] {
            assert_abs_diff_eq!(
                wc.log_density(angle(x)),
                wc.density(angle(x)).ln(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn standard_cdf_endpoints_and_midpoint() {
        for rho in [0.0, 0.2, 0.5, 0.9] {
            assert_abs_diff_eq!(standard_cdf(Angle::ZERO, rho), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(standard_cdf(Angle::PI, rho), 0.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn standard_cdf_equals_arccos_expression() {
        // the half-angle evaluation and the arccos form are the same function
        for rho in [0.0, 0.3, 0.65, 0.9] {
            for i in 1..40 {
                let d = f64::from(i) * (TAU / 40.0);
                let u = ((1.0 + rho * rho) * d.cos() - 2.0 * rho)
                    / (1.0 + rho * rho - 2.0 * rho * d.cos());
                let acos_form = u.clamp(-1.0, 1.0).acos() / TAU;
                let expected = if d <= PI { acos_form } else { 1.0 - acos_form };
                assert_abs_diff_eq!(standard_cdf(angle(d), rho), expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn standard_cdf_quarter_turn_closed_form() {
        // arccos(-0.8) / 2π for ρ = 0.5 at δ = π/2.
        let expected = (-0.8f64).acos() / TAU;
        assert_abs_diff_eq!(
            standard_cdf(angle(PI / 2.0), 0.5),
            expected,
            epsilon = 1e-14
        );
    }

    #[test]
    fn cdf_reduces_to_standard_when_location_is_zero() {
        let wc = WrappedCauchy::new(Angle::ZERO, 0.7).unwrap();
        for x in [0.0, 0.4, 2.0, 3.5, 6.0] {
            assert_abs_diff_eq!(
                wc.cdf(angle(x)),
                standard_cdf(angle(x), 0.7),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn cdf_uniform_is_linear() {
        let wc = WrappedCauchy::new(angle(2.0), 0.0).unwrap();
        for x in [0.0, 1.0, 3.0, 6.0] {
            assert_abs_diff_eq!(wc.cdf(angle(x)), x / TAU, epsilon = 1e-14);
        }
    }

    #[test]
    fn cdf_at_location_counts_mass_below_it() {
        // Mass on [0, μ] equals the mass within μ below the location,
        // which is G₀(π/2) for μ = π/2 by symmetry of the density.
        let wc = WrappedCauchy::new(angle(PI / 2.0), 0.5).unwrap();
        let expected = (-0.8f64).acos() / TAU;
        assert_abs_diff_eq!(wc.cdf(angle(PI / 2.0)), expected, epsilon = 1e-13);
    }

    #[test]
    fn quantile_origin_and_uniform() {
        let wc = WrappedCauchy::new(angle(1.1), 0.6).unwrap();
        let q0 = wc.quantile(0.0).unwrap();
        assert!(q0.radians() < 1e-10 || TAU - q0.radians() < 1e-10);

        let uni = WrappedCauchy::new(angle(2.3), 0.0).unwrap();
        for p in [0.0, 0.25, 0.5, 0.99] {
            assert_abs_diff_eq!(uni.quantile(p).unwrap().radians(), TAU * p, epsilon = 1e-12);
        }
    }

    #[test]
    fn quantile_inverts_quarter_turn_value() {
        let wc = WrappedCauchy::new(Angle::ZERO, 0.5).unwrap();
        let p = (-0.8f64).acos() / TAU;
        assert_abs_diff_eq!(wc.quantile(p).unwrap().radians(), PI / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn quantile_rejects_bad_probability() {
        let wc = WrappedCauchy::uniform();
        assert!(wc.quantile(1.0).is_err());
        assert!(wc.quantile(-0.01).is_err());
        assert!(wc.quantile(f64::NAN).is_err());
    }
}
