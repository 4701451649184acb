//! Joint density evaluation and sequential simulation over the flattened
//! series.
//!
//! The N-dimensional circula factorizes over coordinate pairs in
//! consecutive-index order: tree ℓ holds the pairs (i, i−ℓ), conditioned on
//! everything strictly between them. Conditional distribution functions are
//! carried between trees by the pair h-functions: after pair (i, j) is
//! evaluated with arguments x = 2πF(υ_i | between) and y = 2πF(υ_j | between),
//! the next tree reads 2πF(υ_i | between ∪ j) = 2π·h(x | y) and
//! 2πF(υ_j | between ∪ i) = 2π·h(y | x). Pairs more than p blocks apart are
//! independence circulas: they contribute no density and pass their
//! conditionals through unchanged, so evaluation stops at tree m(p+1) − 1.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::angle::Angle;
use crate::error::{CirculaError, Result};
use crate::model::ModelSpec;
use crate::series::{CircularSeries, UniformizedSeries};

// Largest double below one; keeps 2π·h strictly inside [0, 2π).
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Pushes every coordinate through its marginal distribution function:
/// υ = 2π·F_j(φ).
pub fn uniformize(model: &ModelSpec, series: &CircularSeries) -> Result<UniformizedSeries> {
    check_width(model, series.n_series())?;
    let m = model.shape().m();
    let data = series
        .flat()
        .iter()
        .enumerate()
        .map(|(n, &phi)| {
            let f = model.marginal(n % m).cdf(phi);
            Angle::wrap_unchecked(TAU * f.min(BELOW_ONE))
        })
        .collect();
    UniformizedSeries::from_flat(m, data)
}

/// Inverts [`uniformize`] through the marginal quantile functions.
pub fn deuniformize(model: &ModelSpec, u: &UniformizedSeries) -> Result<CircularSeries> {
    check_width(model, u.n_series())?;
    let m = model.shape().m();
    let data = u
        .flat()
        .iter()
        .enumerate()
        .map(|(n, &v)| model.marginal(n % m).quantile(v.radians() / TAU))
        .collect::<Result<Vec<_>>>()?;
    CircularSeries::from_flat(m, data)
}

/// Log of the N-dimensional circula density at `u`.
///
/// Returns −N·log 2π plus, for every dependent pair, the log of its density
/// relative to independence.
pub fn circula_log_density(model: &ModelSpec, u: &UniformizedSeries) -> Result<f64> {
    check_width(model, u.n_series())?;
    let n = u.len();
    let depth = model.shape().max_tree_depth().min(n - 1);
    let mut fwd: Vec<Angle> = u.flat().to_vec();
    let mut bwd = fwd.clone();
    let mut log_c = -(n as f64) * TAU.ln();
    for level in 1..=depth {
        // pairs (i, i - level) update their own slots in place
        #[allow(clippy::needless_range_loop)]
        for i in level..n {
            let j = i - level;
            if let Some(pc) = model.pair_at_unchecked(i, j) {
                let (x, y) = (fwd[i], bwd[j]);
                log_c += pc.log_density_ratio(x, y);
                fwd[i] = Angle::wrap_unchecked(TAU * pc.h_given_second(x, y).min(BELOW_ONE));
                bwd[j] = Angle::wrap_unchecked(TAU * pc.h_given_first(y, x).min(BELOW_ONE));
            }
        }
    }
    Ok(log_c)
}

/// Log of the joint density of the observed series: the circula at the
/// uniformized coordinates plus the marginal log densities.
pub fn joint_log_density(model: &ModelSpec, series: &CircularSeries) -> Result<f64> {
    let u = uniformize(model, series)?;
    let n = series.len();
    let m = model.shape().m();
    let mut log_f = (n as f64) * TAU.ln() + circula_log_density(model, &u)?;
    for (idx, &phi) in series.flat().iter().enumerate() {
        log_f += model.marginal(idx % m).log_density(phi);
    }
    Ok(log_f)
}

/// Log density of `block` given the last p blocks of `history`, computed as
/// a ratio of joint densities over windows of exactly p+1 blocks. Anything
/// in `history` older than p blocks cannot affect the value.
pub fn transition_log_density(
    model: &ModelSpec,
    block: &[Angle],
    history: &CircularSeries,
) -> Result<f64> {
    let m = model.shape().m();
    let p = model.shape().p();
    if block.len() != m {
        return Err(CirculaError::DimensionMismatch {
            expected: m,
            got: block.len(),
        });
    }
    check_width(model, history.n_series())?;
    if history.n_times() < p {
        return Err(CirculaError::InsufficientHistory {
            needed: p,
            got: history.n_times(),
        });
    }
    let tail_start = history.n_times() - p;
    let mut window: Vec<Angle> = history.flat()[tail_start * m..].to_vec();
    window.extend_from_slice(block);
    let with_block = joint_log_density(model, &CircularSeries::from_flat(m, window.clone())?)?;
    let without_block = if p == 0 {
        0.0
    } else {
        window.truncate(p * m);
        joint_log_density(model, &CircularSeries::from_flat(m, window)?)?
    };
    Ok(with_block - without_block)
}

/// Draws a series of `n_times` blocks from the model, deterministically for
/// a fixed seed.
pub fn simulate(model: &ModelSpec, n_times: usize, seed: u64) -> Result<CircularSeries> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    simulate_with_rng(model, n_times, &mut rng)
}

/// Sequential sampling: each new coordinate is drawn by pushing a uniform
/// variate back through the chain of conditional quantiles, deepest tree
/// first, then the marginal quantile.
pub fn simulate_with_rng<R: Rng + ?Sized>(
    model: &ModelSpec,
    n_times: usize,
    rng: &mut R,
) -> Result<CircularSeries> {
    if n_times == 0 {
        return Err(CirculaError::OutOfRange {
            what: "n_times",
            range: "[1, ..)",
            value: 0.0,
        });
    }
    let m = model.shape().m();
    let n = n_times * m;
    let depth = model.shape().max_tree_depth().min(n - 1);
    let width = depth + 1;

    // bwd[l][idx % width] = 2πF(υ_idx | the l coordinates above idx); only
    // the last `width` coordinates are ever consulted.
    let mut bwd = vec![vec![Angle::ZERO; width]; depth];
    // probs[l] = F(υ_idx | the l coordinates below idx) for the coordinate
    // currently being drawn.
    let mut probs = vec![0.0; depth + 1];
    let mut u: Vec<Angle> = Vec::with_capacity(n);

    for idx in 0..n {
        let reach = depth.min(idx);
        probs[reach] = rng.random();
        for level in (1..=reach).rev() {
            let j = idx - level;
            probs[level - 1] = match model.pair_at_unchecked(idx, j) {
                None => probs[level],
                Some(pc) => {
                    let y = bwd[level - 1][j % width];
                    pc.h_inverse_given_second(probs[level], y)?.radians() / TAU
                }
            };
        }
        let u_idx = Angle::wrap_unchecked(TAU * probs[0]);
        u.push(u_idx);

        if depth > 0 {
            bwd[0][idx % width] = u_idx;
            // rows 1..depth-1 hold deeper conditionals for later coordinates
            for level in 1..depth.min(reach + 1) {
                let j = idx - level;
                let y = bwd[level - 1][j % width];
                bwd[level][j % width] = match model.pair_at_unchecked(idx, j) {
                    None => y,
                    Some(pc) => {
                        let x = Angle::wrap_unchecked(TAU * probs[level - 1]);
                        Angle::wrap_unchecked(TAU * pc.h_given_first(y, x).min(BELOW_ONE))
                    }
                };
            }
        }
    }

    deuniformize(model, &UniformizedSeries::from_flat(m, u)?)
}

fn check_width(model: &ModelSpec, got: usize) -> Result<()> {
    let expected = model.shape().m();
    if got != expected {
        return Err(CirculaError::DimensionMismatch { expected, got });
    }
    Ok(())
}
