//! Pair-circula models for multivariate circular time series.
//!
//! A circula is the circular analog of a copula: a joint density on the torus
//! whose univariate marginals are all circular uniform and which is 2π-periodic
//! in every argument. This crate factorizes the joint density of an angular
//! time series into wrapped Cauchy marginals and a product of bivariate
//! circulas laid out in consecutive-index (D-vine) order over the flattened
//! series. Strict stationarity plus a p-th order Markov assumption ties the
//! pairs down to m(m−1)/2 cross-sectional and m²p serial dependence parameters.
//!
//! The crate provides
//! - exact joint, conditional and transition log densities ([`vine`]),
//! - stationary sequential simulation ([`vine::simulate`]),
//! - Bayesian fitting by adaptive random-walk Metropolis with multi-chain
//!   posterior summaries ([`estimate`]).

pub mod angle;
pub mod error;
pub mod estimate;
pub mod model;
pub mod pair;
pub mod series;
pub mod vine;
pub mod wrapped_cauchy;

pub use angle::{mean_direction, resultant_length, Angle};
pub use error::{CirculaError, Result};
pub use estimate::{fit, map_estimate, ChainSummary, McmcConfig, ParamSummary};
pub use model::{ModelShape, ModelSpec};
pub use pair::PairCircula;
pub use series::{CircularSeries, UniformizedSeries};
pub use wrapped_cauchy::WrappedCauchy;
