//! Shared fixtures for the criterion benchmarks.

use circula::{Angle, ModelShape, ModelSpec, PairCircula, WrappedCauchy};

/// A three-station order-two model with dependence magnitudes in the range
/// seen on hourly wind data.
pub fn wind_like_model() -> ModelSpec {
    let shape = ModelShape::new(3, 2).unwrap();
    let angle = |x: f64| Angle::new(x).unwrap();
    let marginals = vec![
        WrappedCauchy::new(angle(3.47), 0.14).unwrap(),
        WrappedCauchy::new(angle(3.79), 0.19).unwrap(),
        WrappedCauchy::new(angle(2.90), 0.83).unwrap(),
    ];
    let cross = [0.55, 0.01, 0.04]
        .iter()
        .map(|&r| PairCircula::new(1, r).unwrap())
        .collect();
    let serial = [
        0.09, 0.26, 0.01, 0.23, 0.09, 0.01, 0.08, 0.08, 0.86, 0.11, 0.09, 0.06, 0.17, 0.10, 0.26,
        0.22, 0.10, 0.10,
    ]
    .iter()
    .map(|&r| PairCircula::new(1, r).unwrap())
    .collect();
    ModelSpec::new(shape, marginals, cross, serial).unwrap()
}
