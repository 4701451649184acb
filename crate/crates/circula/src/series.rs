//! Time-major storage for multivariate angular series.
//!
//! A series of m angles observed at T time points flattens to N = T·m
//! coordinates with the value of series j at time t stored at flat index
//! t·m + j (zero-based). All densities and the simulation work on this
//! flattened order.

use crate::angle::Angle;
use crate::error::{CirculaError, Result};

/// T·m angles, time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularSeries {
    m: usize,
    data: Vec<Angle>,
}

impl CircularSeries {
    /// Builds a series from flattened time-major data of length T·m.
    pub fn from_flat(m: usize, data: Vec<Angle>) -> Result<Self> {
        if m == 0 {
            return Err(CirculaError::InvalidSpec(
                "a series needs at least one column".into(),
            ));
        }
        if data.is_empty() || !data.len().is_multiple_of(m) {
            return Err(CirculaError::InvalidSpec(format!(
                "flat data length {} is not a positive multiple of m = {}",
                data.len(),
                m
            )));
        }
        Ok(Self { m, data })
    }

    /// Builds a series from per-time rows, each of equal length m.
    pub fn from_rows(rows: &[Vec<Angle>]) -> Result<Self> {
        let m = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != m) {
            return Err(CirculaError::InvalidSpec(
                "rows have unequal lengths".into(),
            ));
        }
        Self::from_flat(m, rows.concat())
    }

    /// Number of series per time point (m).
    pub fn n_series(&self) -> usize {
        self.m
    }

    /// Number of time points (T).
    pub fn n_times(&self) -> usize {
        self.data.len() / self.m
    }

    /// Total number of coordinates N = T·m.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flat(&self) -> &[Angle] {
        &self.data
    }

    /// Value of series `j` at time `t`, both zero-based.
    pub fn value(&self, t: usize, j: usize) -> Angle {
        self.data[t * self.m + j]
    }

    /// The m values observed at time `t`.
    pub fn block(&self, t: usize) -> &[Angle] {
        &self.data[t * self.m..(t + 1) * self.m]
    }

    /// All values of series `j` in time order.
    pub fn column(&self, j: usize) -> Vec<Angle> {
        self.data[j..].iter().step_by(self.m).copied().collect()
    }

    /// Copy of the `len` consecutive blocks starting at time `t0`.
    pub fn window(&self, t0: usize, len: usize) -> Result<CircularSeries> {
        if t0 + len > self.n_times() || len == 0 {
            return Err(CirculaError::InvalidSpec(format!(
                "window [{t0}, {t0}+{len}) outside series of {} blocks",
                self.n_times()
            )));
        }
        Self::from_flat(self.m, self.data[t0 * self.m..(t0 + len) * self.m].to_vec())
    }
}

/// A series pushed through its marginal distribution functions: each
/// coordinate is 2π·F_j(φ), so every column is circular uniform under the
/// model that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformizedSeries {
    m: usize,
    data: Vec<Angle>,
}

impl UniformizedSeries {
    pub fn from_flat(m: usize, data: Vec<Angle>) -> Result<Self> {
        let inner = CircularSeries::from_flat(m, data)?;
        Ok(Self {
            m: inner.m,
            data: inner.data,
        })
    }

    pub fn n_series(&self) -> usize {
        self.m
    }

    pub fn n_times(&self) -> usize {
        self.data.len() / self.m
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flat(&self) -> &[Angle] {
        &self.data
    }
}
