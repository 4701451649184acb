//! Quadrature and sampling oracles for the wrapped Cauchy layer.

mod common;

use std::f64::consts::{PI, TAU};

use circula::wrapped_cauchy::standard_cdf;
use circula::{resultant_length, Angle, WrappedCauchy};
use common::{adaptive_simpson, cumulative_on_grid};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn angle(x: f64) -> Angle {
    Angle::new(x).unwrap()
}

#[test]
fn density_integrates_to_one() {
    for i in 0..10 {
        let rho = 0.1 * i as f64;
        let wc = WrappedCauchy::new(angle(1.1), rho).unwrap();
        let mass = adaptive_simpson(&|x| wc.density(angle(x)), 0.0, TAU, 1e-13);
        assert!(
            (mass - 1.0).abs() < 1e-10,
            "rho {rho}: mass deviates by {:e}",
            mass - 1.0
        );
    }
}

#[test]
fn cdf_matches_quadrature_of_density() {
    let grid: Vec<f64> = (1..=200)
        .map(|i| i as f64 * (TAU / 200.0) * 0.9999)
        .collect();
    for (mu, rho) in [(0.0, 0.3), (2.0, 0.0), (5.5, 0.8), (PI, 0.5)] {
        let wc = WrappedCauchy::new(angle(mu), rho).unwrap();
        let numeric = cumulative_on_grid(&|x| wc.density(angle(x)), &grid, 1e-13);
        for (&g, &expected) in grid.iter().zip(&numeric) {
            let got = wc.cdf(angle(g));
            assert!(
                (got - expected).abs() < 1e-9,
                "mu {mu} rho {rho} theta {g}: cdf {got} vs quadrature {expected}"
            );
        }
    }
}

#[test]
fn quarter_turn_cdf_value_agrees_with_quadrature() {
    // frozen closed-form value arccos(-0.8)/2π for ρ = 0.5 at δ = π/2
    let frozen = 0.397_583_617_650_433_26;
    assert!(((-0.8f64).acos() / TAU - frozen).abs() < 1e-15);
    let wc = WrappedCauchy::new(Angle::ZERO, 0.5).unwrap();
    let quad = adaptive_simpson(&|x| wc.density(angle(x)), 0.0, PI / 2.0, 1e-13);
    assert!((quad - frozen).abs() < 1e-10);
    assert!((standard_cdf(angle(PI / 2.0), 0.5) - frozen).abs() < 1e-12);
}

#[test]
fn cdf_at_own_location_agrees_with_quadrature() {
    // F(μ) for μ = π/2, ρ = 0.5 equals G₀(π/2) by the symmetry of the density
    let wc = WrappedCauchy::new(angle(PI / 2.0), 0.5).unwrap();
    let quad = adaptive_simpson(&|x| wc.density(angle(x)), 0.0, PI / 2.0, 1e-13);
    assert!((wc.cdf(angle(PI / 2.0)) - quad).abs() < 1e-10);
    assert!((quad - 0.397_583_617_650_433_26).abs() < 1e-10);
}

#[test]
fn finite_difference_of_cdf_recovers_density() {
    let h = 1e-6;
    for (mu, rho) in [(0.7, 0.2), (3.0, 0.6), (5.9, 0.9)] {
        let wc = WrappedCauchy::new(angle(mu), rho).unwrap();
        for i in 1..1000 {
            let x = i as f64 * (TAU / 1001.0);
            let slope = (wc.cdf(angle(x + h)) - wc.cdf(angle(x - h))) / (2.0 * h);
            let density = wc.density(angle(x));
            assert!(
                (slope - density).abs() < 1e-6,
                "mu {mu} rho {rho} x {x}: slope {slope} vs density {density}"
            );
        }
    }
}

#[test]
fn quantile_round_trip_on_dense_grid() {
    for (mu, rho) in [(0.0, 0.0), (1.0, 0.4), (4.2, 0.9), (2.0, 0.99)] {
        let wc = WrappedCauchy::new(angle(mu), rho).unwrap();
        for i in 0..2048 {
            let p = i as f64 / 2048.0;
            let theta = wc.quantile(p).unwrap();
            let back = wc.cdf(theta);
            assert!(
                (back - p).abs() < 1e-10,
                "mu {mu} rho {rho} p {p}: round trip {back}"
            );
        }
    }
}

#[test]
fn standard_cdf_symmetry() {
    for rho in [0.05, 0.35, 0.75, 0.95] {
        for i in 1..500 {
            let d = i as f64 * (TAU / 500.0);
            let s = standard_cdf(angle(d), rho) + standard_cdf(angle(TAU - d), rho);
            assert!((s - 1.0).abs() < 1e-12, "rho {rho} delta {d}: sum {s}");
        }
    }
}

#[test]
fn sample_resultant_length_estimates_concentration() {
    let wc = WrappedCauchy::new(angle(2.4), 0.8).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(20);
    let draws: Vec<Angle> = (0..100_000).map(|_| wc.sample(&mut rng)).collect();
    let rl = resultant_length(&draws).unwrap();
    assert!((rl - 0.8).abs() < 0.02, "resultant length {rl}");
}
