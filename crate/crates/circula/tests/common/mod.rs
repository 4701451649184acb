//! Shared numerical oracles for integration tests: quadrature routines kept
//! deliberately independent of the closed forms they check.

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    simpson_step(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (a + b);
    let lm = 0.5 * (a + mid);
    let rm = 0.5 * (mid + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, mid, fa, flm, fm);
    let right = simpson(mid, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Cumulative integral of `f` from 0 to every grid point, segment by
/// segment, for monotone CDF comparisons.
#[allow(dead_code)] // not every test target integrates cumulatively
pub fn cumulative_on_grid<F: Fn(f64) -> f64>(f: &F, grid: &[f64], seg_tol: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut last = 0.0;
    for &g in grid {
        acc += adaptive_simpson(f, last, g, seg_tol);
        last = g;
        out.push(acc);
    }
    out
}
