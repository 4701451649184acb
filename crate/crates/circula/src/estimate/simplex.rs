//! Derivative-free posterior mode search (Nelder-Mead simplex).

use crate::error::{CirculaError, Result};
use crate::model::ModelShape;
use crate::series::CircularSeries;

use super::posterior::{log_posterior, log_posterior_or_neg_inf};

const MAX_EVALS: usize = 5000;
const DIAMETER_TOL: f64 = 1e-6;
const INITIAL_STEP: f64 = 0.2;

/// Climbs the log posterior from `init` with a Nelder-Mead simplex; the
/// returned point never scores below the initial one. Stops when the
/// simplex diameter drops under 1e−6 or after 5000 evaluations.
pub fn map_estimate(shape: ModelShape, data: &CircularSeries, init: &[f64]) -> Result<Vec<f64>> {
    let init_lp = log_posterior(shape, init, data)?;
    if !init_lp.is_finite() {
        return Err(CirculaError::InvalidSpec(
            "log posterior is not finite at the initial point".into(),
        ));
    }
    let dim = init.len();
    let evals = std::cell::Cell::new(0usize);
    let score = |v: &[f64]| {
        evals.set(evals.get() + 1);
        -log_posterior_or_neg_inf(shape, v, data)
    };

    // vertices as (objective, point), kept sorted best-first
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim + 1);
    simplex.push((-init_lp, init.to_vec()));
    for i in 0..dim {
        let mut v = init.to_vec();
        v[i] += INITIAL_STEP;
        let s = score(&v);
        simplex.push((s, v));
    }
    sort(&mut simplex);

    while evals.get() < MAX_EVALS && diameter(&simplex) > DIAMETER_TOL {
        let worst = simplex.len() - 1;
        let centroid = centroid_excluding(&simplex, worst);
        let reflected = blend(&centroid, &simplex[worst].1, -1.0);
        let fr = score(&reflected);

        if fr < simplex[0].0 {
            let expanded = blend(&centroid, &simplex[worst].1, -2.0);
            let fe = score(&expanded);
            simplex[worst] = if fe < fr {
                (fe, expanded)
            } else {
                (fr, reflected)
            };
        } else if fr < simplex[worst - 1].0 {
            simplex[worst] = (fr, reflected);
        } else {
            let contracted = if fr < simplex[worst].0 {
                blend(&centroid, &reflected, 0.5)
            } else {
                blend(&centroid, &simplex[worst].1, 0.5)
            };
            let fc = score(&contracted);
            if fc < simplex[worst].0.min(fr) {
                simplex[worst] = (fc, contracted);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].1.clone();
                for v in simplex.iter_mut().skip(1) {
                    for (x, b) in v.1.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    v.0 = score(&v.1);
                }
            }
        }
        sort(&mut simplex);
    }

    let best = simplex.into_iter().next().expect("non-empty simplex");
    if best.0 <= -init_lp {
        Ok(best.1)
    } else {
        Ok(init.to_vec())
    }
}

fn sort(simplex: &mut [(f64, Vec<f64>)]) {
    simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable objectives"));
}

fn diameter(simplex: &[(f64, Vec<f64>)]) -> f64 {
    let best = &simplex[0].1;
    simplex[1..]
        .iter()
        .map(|(_, v)| {
            v.iter()
                .zip(best)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn centroid_excluding(simplex: &[(f64, Vec<f64>)], skip: usize) -> Vec<f64> {
    let dim = simplex[0].1.len();
    let mut c = vec![0.0; dim];
    for (i, (_, v)) in simplex.iter().enumerate() {
        if i == skip {
            continue;
        }
        for (cx, vx) in c.iter_mut().zip(v) {
            *cx += vx;
        }
    }
    let n = (simplex.len() - 1) as f64;
    for cx in c.iter_mut() {
        *cx /= n;
    }
    c
}

// point = centroid + t·(other − centroid)
fn blend(centroid: &[f64], other: &[f64], t: f64) -> Vec<f64> {
    centroid
        .iter()
        .zip(other)
        .map(|(c, o)| c + t * (o - c))
        .collect()
}
