//! Model specification for the stationary p-th order Markov process and the
//! map that ties flattened coordinate pairs to their circulas.
//!
//! Station indices `l1`, `l2` and the lag `k` are one-based, matching the
//! usual c*_{l1,l2,k} labelling of the dependence functions; flat coordinate
//! indices are zero-based.

use crate::error::{CirculaError, Result};
use crate::pair::PairCircula;
use crate::wrapped_cauchy::WrappedCauchy;

/// Dimensions of a model: m series per time point, Markov order p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelShape {
    m: usize,
    p: usize,
}

impl ModelShape {
    pub fn new(m: usize, p: usize) -> Result<Self> {
        if m == 0 {
            return Err(CirculaError::InvalidSpec(
                "a model needs at least one series".into(),
            ));
        }
        Ok(Self { m, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of distinct pair circulas: m(m−1)/2 cross-sectional plus
    /// m²p serial.
    pub fn pair_count(&self) -> usize {
        self.m * (self.m - 1) / 2 + self.m * self.m * self.p
    }

    /// Number of free parameters: a location and a concentration per
    /// marginal plus one binding concentration per pair.
    pub fn param_count(&self) -> usize {
        2 * self.m + self.pair_count()
    }

    /// Deepest tree of the flattened decomposition that can hold a
    /// dependent pair; everything farther apart is independence.
    pub fn max_tree_depth(&self) -> usize {
        self.m * (self.p + 1) - 1
    }

    /// Parameter names in reporting order: marginal locations, marginal
    /// concentrations, cross-sectional bindings, then serial bindings lag
    /// by lag.
    pub fn param_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.param_count());
        for j in 1..=self.m {
            names.push(format!("mu_{j}"));
        }
        for j in 1..=self.m {
            names.push(format!("rho_{j}"));
        }
        for l1 in 2..=self.m {
            for l2 in 1..l1 {
                names.push(format!("rho_{},0", station_pair(l2, l1)));
            }
        }
        for k in 1..=self.p {
            for l1 in 1..=self.m {
                for l2 in 1..=self.m {
                    names.push(format!("rho_{},{k}", station_pair(l1, l2)));
                }
            }
        }
        names
    }

    // Storage index of the cross pair (l1, l2), 1 <= l2 < l1 <= m, in
    // row-major order (2,1), (3,1), (3,2), ...
    fn cross_index(&self, l1: usize, l2: usize) -> usize {
        (l1 - 1) * (l1 - 2) / 2 + (l2 - 1)
    }

    // Storage index of the serial pair (l1, l2, k): lag-major, then l1, l2.
    fn serial_index(&self, l1: usize, l2: usize, k: usize) -> usize {
        (k - 1) * self.m * self.m + (l1 - 1) * self.m + (l2 - 1)
    }
}

fn station_pair(a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("{a}{b}")
    } else {
        format!("{a}.{b}")
    }
}

/// A fully specified model: wrapped Cauchy marginals per series, one pair
/// circula per cross-sectional pair and per (station, station, lag) triple.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    shape: ModelShape,
    marginals: Vec<WrappedCauchy>,
    cross: Vec<PairCircula>,
    serial: Vec<PairCircula>,
}

impl ModelSpec {
    /// `cross` in row-major (l1 > l2) order, length m(m−1)/2; `serial` in
    /// lag-major order, length m²p.
    pub fn new(
        shape: ModelShape,
        marginals: Vec<WrappedCauchy>,
        cross: Vec<PairCircula>,
        serial: Vec<PairCircula>,
    ) -> Result<Self> {
        let m = shape.m();
        if marginals.len() != m {
            return Err(CirculaError::InvalidSpec(format!(
                "expected {m} marginals, got {}",
                marginals.len()
            )));
        }
        let want_cross = m * (m - 1) / 2;
        if cross.len() != want_cross {
            return Err(CirculaError::InvalidSpec(format!(
                "expected {want_cross} cross pairs, got {}",
                cross.len()
            )));
        }
        let want_serial = m * m * shape.p();
        if serial.len() != want_serial {
            return Err(CirculaError::InvalidSpec(format!(
                "expected {want_serial} serial pairs, got {}",
                serial.len()
            )));
        }
        Ok(Self {
            shape,
            marginals,
            cross,
            serial,
        })
    }

    /// Uniform marginals and independence everywhere.
    pub fn independence(shape: ModelShape) -> Self {
        let m = shape.m();
        Self {
            shape,
            marginals: vec![WrappedCauchy::uniform(); m],
            cross: vec![PairCircula::independence(); m * (m - 1) / 2],
            serial: vec![PairCircula::independence(); m * m * shape.p()],
        }
    }

    pub fn shape(&self) -> ModelShape {
        self.shape
    }

    pub fn marginals(&self) -> &[WrappedCauchy] {
        &self.marginals
    }

    /// Marginal of series `j`, zero-based.
    pub fn marginal(&self, j: usize) -> &WrappedCauchy {
        &self.marginals[j]
    }

    /// Cross pairs in storage order.
    pub fn cross_pairs(&self) -> &[PairCircula] {
        &self.cross
    }

    /// Serial pairs in storage order.
    pub fn serial_pairs(&self) -> &[PairCircula] {
        &self.serial
    }

    /// Cross-sectional circula of stations `l1 > l2`, one-based.
    pub fn cross(&self, l1: usize, l2: usize) -> Result<&PairCircula> {
        let m = self.shape.m();
        if !(1 <= l2 && l2 < l1 && l1 <= m) {
            return Err(CirculaError::InvalidSpec(format!(
                "cross pair ({l1}, {l2}) needs 1 <= l2 < l1 <= {m}"
            )));
        }
        Ok(&self.cross[self.shape.cross_index(l1, l2)])
    }

    /// Serial circula of current station `l1`, lagged station `l2`, lag
    /// `k ∈ 1..=p`, one-based.
    pub fn serial(&self, l1: usize, l2: usize, k: usize) -> Result<&PairCircula> {
        let m = self.shape.m();
        let p = self.shape.p();
        if !(1..=m).contains(&l1) || !(1..=m).contains(&l2) || !(1..=p).contains(&k) {
            return Err(CirculaError::InvalidSpec(format!(
                "serial pair ({l1}, {l2}, {k}) needs stations in 1..={m} and lag in 1..={p}"
            )));
        }
        Ok(&self.serial[self.shape.serial_index(l1, l2, k)])
    }

    /// The circula tied to the flattened coordinate pair `j < i`
    /// (zero-based). `None` means the pair is more than p blocks apart and
    /// therefore an independence circula.
    pub fn pair_at(&self, i: usize, j: usize, n: usize) -> Result<Option<&PairCircula>> {
        if j >= i || i >= n {
            return Err(CirculaError::BadIndexPair { i, j, n });
        }
        Ok(self.pair_at_unchecked(i, j))
    }

    pub(crate) fn pair_at_unchecked(&self, i: usize, j: usize) -> Option<&PairCircula> {
        debug_assert!(j < i);
        let m = self.shape.m();
        let k = i / m - j / m;
        if k == 0 {
            let idx = self.shape.cross_index(i % m + 1, j % m + 1);
            Some(&self.cross[idx])
        } else if k <= self.shape.p() {
            let idx = self.shape.serial_index(i % m + 1, j % m + 1, k);
            Some(&self.serial[idx])
        } else {
            None
        }
    }
}
