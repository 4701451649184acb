//! Bivariate circulas built from a wrapped Cauchy binding density.
//!
//! A pair circula links two circular-uniform coordinates through
//! c(θ₁, θ₂) = (1/2π)·g(θ₂ − qθ₁), where the binding density g is
//! wC(0, binding_rho) and the twist q is ±1. Because g is symmetric about
//! zero, both conditional distribution functions (the h-functions of the
//! vine recursion) are wrapped Cauchy distribution functions whose location
//! is the rotated conditioning angle; their inverses come from the wrapped
//! Cauchy quantile.

use std::f64::consts::TAU;

use crate::angle::Angle;
use crate::error::{CirculaError, Result};
use crate::wrapped_cauchy::{chord_sq, WrappedCauchy};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCircula {
    q: i8,
    binding: WrappedCauchy,
}

impl PairCircula {
    /// A pair circula with twist `q ∈ {−1, +1}` and binding density
    /// wC(0, `binding_rho`). `binding_rho = 0` gives the independence circula.
    pub fn new(q: i8, binding_rho: f64) -> Result<Self> {
        if q != 1 && q != -1 {
            return Err(CirculaError::OutOfRange {
                what: "twist q",
                range: "{-1, +1}",
                value: q as f64,
            });
        }
        Ok(Self {
            q,
            binding: WrappedCauchy::new(Angle::ZERO, binding_rho)?,
        })
    }

    /// The independence circula, constant (2π)⁻².
    pub fn independence() -> Self {
        Self {
            q: 1,
            binding: WrappedCauchy::uniform(),
        }
    }

    pub fn q(&self) -> i8 {
        self.q
    }

    pub fn binding_rho(&self) -> f64 {
        self.binding.rho()
    }

    pub fn is_independence(&self) -> bool {
        self.binding.rho() == 0.0
    }

    /// Dependence strength: the mean resultant length of the binding
    /// density, which for wC(0, ρ) is ρ itself.
    pub fn dependence(&self) -> f64 {
        self.binding.rho()
    }

    /// Joint density c(x, y) = (1/2π)·g(y − qx).
    pub fn density(&self, x: Angle, y: Angle) -> f64 {
        self.binding.density(self.offset(x, y)) / TAU
    }

    /// log((2π)² c(x, y)): the density relative to the independence circula.
    /// Computed from the closed form, never via a log of small differences.
    pub fn log_density_ratio(&self, x: Angle, y: Angle) -> f64 {
        let rho = self.binding.rho();
        let delta = self.offset(x, y).radians();
        (1.0 - rho * rho).ln() - chord_sq(rho, delta).ln()
    }

    /// Conditional distribution function of the second slot given the first:
    /// 2π·∫₀^y c(x, s) ds.
    pub fn h_given_first(&self, y: Angle, x: Angle) -> f64 {
        self.conditional(x).cdf(y)
    }

    /// Conditional distribution function of the first slot given the second:
    /// 2π·∫₀^x c(s, y) ds.
    pub fn h_given_second(&self, x: Angle, y: Angle) -> f64 {
        self.conditional(y).cdf(x)
    }

    /// Inverse of `y ↦ h_given_first(y, x)` for `p ∈ [0, 1)`.
    pub fn h_inverse_given_first(&self, p: f64, x: Angle) -> Result<Angle> {
        self.conditional(x).quantile(p)
    }

    /// Inverse of `x ↦ h_given_second(x, y)` for `p ∈ [0, 1)`.
    pub fn h_inverse_given_second(&self, p: f64, y: Angle) -> Result<Angle> {
        self.conditional(y).quantile(p)
    }

    // Either conditional is wC(q·given, ρ); evenness of the binding density
    // makes the two slots interchangeable.
    fn conditional(&self, given: Angle) -> WrappedCauchy {
        let mu = Angle::wrap_unchecked(f64::from(self.q) * given.radians());
        WrappedCauchy::new(mu, self.binding.rho()).expect("binding rho already validated")
    }

    fn offset(&self, x: Angle, y: Angle) -> Angle {
        Angle::wrap_unchecked(y.radians() - f64::from(self.q) * x.radians())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn angle(x: f64) -> Angle {
        Angle::new(x).unwrap()
    }

    #[test]
    fn rejects_bad_twist() {
        assert!(PairCircula::new(0, 0.5).is_err());
        assert!(PairCircula::new(2, 0.5).is_err());
        assert!(PairCircula::new(-1, 0.5).is_ok());
    }

    #[test]
    fn independence_density_is_constant() {
        let pc = PairCircula::independence();
        for (x, y) in [(0.0, 0.0), (1.0, 4.0), (5.9, 2.3)] {
            assert_abs_diff_eq!(
                pc.density(angle(x), angle(y)),
                1.0 / (TAU * TAU),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn density_on_and_off_the_ridge() {
        let pc = PairCircula::new(1, 0.5).unwrap();
        let x = angle(2.0);
        assert_abs_diff_eq!(pc.density(x, x), 3.0 / (2.0 * TAU * PI), epsilon = 1e-13);
        assert_abs_diff_eq!(
            pc.density(x, angle(2.0 + PI)),
            1.0 / (TAU * 6.0 * PI),
            epsilon = 1e-13
        );
    }

    #[test]
    fn density_is_slot_symmetric() {
        // The binding density is even, so both twists give an exchangeable pair.
        for q in [-1, 1] {
            let pc = PairCircula::new(q, 0.7).unwrap();
            for (x, y) in [(0.3, 5.1), (2.0, 2.0), (4.4, 0.1)] {
                assert_abs_diff_eq!(
                    pc.density(angle(x), angle(y)),
                    pc.density(angle(y), angle(x)),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn h_independence_passes_through() {
        let pc = PairCircula::independence();
        for y in [0.0, 1.0, 3.9, 6.2] {
            assert_abs_diff_eq!(
                pc.h_given_first(angle(y), angle(2.0)),
                y / TAU,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                pc.h_given_second(angle(y), angle(2.0)),
                y / TAU,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn h_given_first_symmetric_arc() {
        let pc = PairCircula::new(1, 0.5).unwrap();
        assert_abs_diff_eq!(
            pc.h_given_first(Angle::PI, Angle::ZERO),
            0.5,
            epsilon = 1e-13
        );
    }

    #[test]
    fn h_given_first_quarter_turn() {
        // Arc arithmetic: frac(G₀(0) − G₀(3π/2)) = G₀(π/2) = arccos(−0.8)/2π.
        let pc = PairCircula::new(1, 0.5).unwrap();
        let expected = (-0.8f64).acos() / TAU;
        assert_abs_diff_eq!(
            pc.h_given_first(angle(PI / 2.0), angle(PI / 2.0)),
            expected,
            epsilon = 1e-13
        );
    }

    #[test]
    fn h_given_second_matches_explicit_arc_formulas() {
        use crate::wrapped_cauchy::standard_cdf;
        let frac = |d: f64| if d < 0.0 { d + 1.0 } else { d };
        for &q in &[1i8, -1] {
            let pc = PairCircula::new(q, 0.6).unwrap();
            for (x, y) in [(0.7, 2.9), (4.0, 1.2), (5.5, 5.6)] {
                let expected = if q == 1 {
                    frac(standard_cdf(angle(y), 0.6) - standard_cdf(angle(y - x), 0.6))
                } else {
                    frac(standard_cdf(angle(y + x), 0.6) - standard_cdf(angle(y), 0.6))
                };
                assert_abs_diff_eq!(
                    pc.h_given_second(angle(x), angle(y)),
                    expected,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn h_given_second_full_circle_limit() {
        let pc = PairCircula::new(1, 0.5).unwrap();
        let eps = 1e-9;
        assert!(pc.h_given_second(angle(TAU - eps), Angle::ZERO) > 1.0 - 1e-6);
        assert_abs_diff_eq!(
            pc.h_given_second(Angle::PI, Angle::PI),
            0.5,
            epsilon = 1e-13
        );
    }

    #[test]
    fn h_inverse_round_trip() {
        let pc = PairCircula::new(1, 0.5).unwrap();
        let x = angle(PI / 2.0);
        let p = (-0.8f64).acos() / TAU;
        let y = pc.h_inverse_given_first(p, x).unwrap();
        assert_abs_diff_eq!(y.radians(), PI / 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pc.h_given_first(y, x), p, epsilon = 1e-10);
    }

    #[test]
    fn h_inverse_independence_and_origin() {
        let pc = PairCircula::independence();
        assert_abs_diff_eq!(
            pc.h_inverse_given_first(0.37, angle(1.0))
                .unwrap()
                .radians(),
            0.37 * TAU,
            epsilon = 1e-12
        );
        let dep = PairCircula::new(1, 0.8).unwrap();
        let zero = dep.h_inverse_given_first(0.0, angle(2.0)).unwrap();
        assert!(zero.radians() < 1e-9 || TAU - zero.radians() < 1e-9);
    }

    #[test]
    fn dependence_reports_binding_rho() {
        assert_abs_diff_eq!(PairCircula::independence().dependence(), 0.0);
        assert_abs_diff_eq!(
            PairCircula::new(1, 0.8637).unwrap().dependence(),
            0.8637,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            PairCircula::new(-1, 0.5).unwrap().dependence(),
            0.5,
            epsilon = 1e-15
        );
    }
}
