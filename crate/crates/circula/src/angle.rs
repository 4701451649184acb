//! Angles on the unit circle and basic circular sample statistics.

use std::f64::consts::TAU;
use std::ops::{Add, Neg, Sub};

use crate::error::{CirculaError, Result};

/// An angle in radians, kept in `[0, 2π)` by every constructor and operation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const PI: Angle = Angle(std::f64::consts::PI);

    /// Wraps `radians` into `[0, 2π)`; rejects non-finite input.
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(CirculaError::NonFinite {
                what: "angle",
                value: radians,
            });
        }
        Ok(Self(wrap(radians)))
    }

    /// Wraps a value already known to be finite.
    pub(crate) fn wrap_unchecked(radians: f64) -> Self {
        debug_assert!(radians.is_finite());
        Self(wrap(radians))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Signed distance to `other` in `(-π, π]`, measured counterclockwise.
    pub fn signed_distance(self, other: Angle) -> f64 {
        let d = wrap(self.0 - other.0);
        if d > std::f64::consts::PI {
            d - TAU
        } else {
            d
        }
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::wrap_unchecked(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::wrap_unchecked(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::wrap_unchecked(-self.0)
    }
}

// rem_euclid can round up to exactly 2π for tiny negative inputs.
fn wrap(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Mean resultant length of a sample: the modulus of the average unit vector.
pub fn resultant_length(sample: &[Angle]) -> Result<f64> {
    let (c, s) = vector_sums(sample)?;
    let n = sample.len() as f64;
    Ok((c / n).hypot(s / n))
}

/// Direction of the sample mean vector, in `[0, 2π)`.
pub fn mean_direction(sample: &[Angle]) -> Result<Angle> {
    let (c, s) = vector_sums(sample)?;
    Angle::new(s.atan2(c))
}

fn vector_sums(sample: &[Angle]) -> Result<(f64, f64)> {
    if sample.is_empty() {
        return Err(CirculaError::EmptySample);
    }
    let mut c = 0.0;
    let mut s = 0.0;
    for a in sample {
        c += a.radians().cos();
        s += a.radians().sin();
    }
    Ok((c, s))
}
