//! JSON model files: marginal parameters plus one entry per pair circula,
//! addressed by one-based station labels and lag.

use std::fs;
use std::path::Path;

use circula::{Angle, ModelShape, ModelSpec, PairCircula, WrappedCauchy};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err<T>(field: impl Into<String>, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError::Field {
        field: field.into(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub m: usize,
    pub p: usize,
    pub marginals: Vec<MarginalEntry>,
    pub cross: Vec<CrossEntry>,
    pub serial: Vec<SerialEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginalEntry {
    pub mu: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossEntry {
    pub l1: usize,
    pub l2: usize,
    pub rho: f64,
    #[serde(default = "one")]
    pub q: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SerialEntry {
    pub l1: usize,
    pub l2: usize,
    pub k: usize,
    pub rho: f64,
    #[serde(default = "one")]
    pub q: i8,
}

fn one() -> i8 {
    1
}

impl ModelFile {
    pub fn load(path: &Path) -> Result<Self, SchemaError> {
        let text = fs::read_to_string(path).map_err(|source| SchemaError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), SchemaError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text).map_err(|source| SchemaError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Validates the entries and assembles the model. Every cross pair
    /// (l1 > l2) and every (l1, l2, k) triple must appear exactly once.
    pub fn to_spec(&self) -> Result<ModelSpec, SchemaError> {
        let shape = match ModelShape::new(self.m, self.p) {
            Ok(s) => s,
            Err(e) => return field_err("m", e.to_string()),
        };
        if self.marginals.len() != self.m {
            return field_err(
                "marginals",
                format!(
                    "need exactly m = {} entries, got {}",
                    self.m,
                    self.marginals.len()
                ),
            );
        }
        let mut marginals = Vec::with_capacity(self.m);
        for (i, entry) in self.marginals.iter().enumerate() {
            let mu = match Angle::new(entry.mu) {
                Ok(a) => a,
                Err(e) => return field_err(format!("marginals[{i}].mu"), e.to_string()),
            };
            match WrappedCauchy::new(mu, entry.rho) {
                Ok(wc) => marginals.push(wc),
                Err(e) => return field_err(format!("marginals[{i}].rho"), e.to_string()),
            }
        }

        let n_cross = self.m * (self.m - 1) / 2;
        if self.cross.len() != n_cross {
            return field_err(
                "cross",
                format!(
                    "need exactly m(m-1)/2 = {n_cross} entries, got {}",
                    self.cross.len()
                ),
            );
        }
        let mut cross: Vec<Option<PairCircula>> = vec![None; n_cross];
        for (i, entry) in self.cross.iter().enumerate() {
            if !(1 <= entry.l2 && entry.l2 < entry.l1 && entry.l1 <= self.m) {
                return field_err(
                    format!("cross[{i}]"),
                    format!(
                        "station pair ({}, {}) needs 1 <= l2 < l1 <= {}",
                        entry.l1, entry.l2, self.m
                    ),
                );
            }
            let slot = (entry.l1 - 1) * (entry.l1 - 2) / 2 + (entry.l2 - 1);
            if cross[slot].is_some() {
                return field_err(
                    format!("cross[{i}]"),
                    format!("duplicate pair ({}, {})", entry.l1, entry.l2),
                );
            }
            match PairCircula::new(entry.q, entry.rho) {
                Ok(pc) => cross[slot] = Some(pc),
                Err(e) => return field_err(format!("cross[{i}]"), e.to_string()),
            }
        }

        let n_serial = self.m * self.m * self.p;
        if self.serial.len() != n_serial {
            return field_err(
                "serial",
                format!(
                    "need exactly m^2 p = {n_serial} entries, got {}",
                    self.serial.len()
                ),
            );
        }
        let mut serial: Vec<Option<PairCircula>> = vec![None; n_serial];
        for (i, entry) in self.serial.iter().enumerate() {
            if !(1..=self.m).contains(&entry.l1)
                || !(1..=self.m).contains(&entry.l2)
                || !(1..=self.p).contains(&entry.k)
            {
                return field_err(
                    format!("serial[{i}]"),
                    format!(
                        "triple ({}, {}, {}) needs stations in 1..={} and lag in 1..={}",
                        entry.l1, entry.l2, entry.k, self.m, self.p
                    ),
                );
            }
            let slot = (entry.k - 1) * self.m * self.m + (entry.l1 - 1) * self.m + (entry.l2 - 1);
            if serial[slot].is_some() {
                return field_err(
                    format!("serial[{i}]"),
                    format!("duplicate triple ({}, {}, {})", entry.l1, entry.l2, entry.k),
                );
            }
            match PairCircula::new(entry.q, entry.rho) {
                Ok(pc) => serial[slot] = Some(pc),
                Err(e) => return field_err(format!("serial[{i}]"), e.to_string()),
            }
        }

        let cross: Vec<PairCircula> = cross.into_iter().map(|c| c.unwrap()).collect();
        let serial: Vec<PairCircula> = serial.into_iter().map(|c| c.unwrap()).collect();
        match ModelSpec::new(shape, marginals, cross, serial) {
            Ok(spec) => Ok(spec),
            Err(e) => field_err("model", e.to_string()),
        }
    }

    /// The file representation of `spec`, entries in storage order.
    pub fn from_spec(spec: &ModelSpec) -> Self {
        let m = spec.shape().m();
        let p = spec.shape().p();
        let marginals = spec
            .marginals()
            .iter()
            .map(|wc| MarginalEntry {
                mu: wc.mu().radians(),
                rho: wc.rho(),
            })
            .collect();
        let mut cross = Vec::new();
        for l1 in 2..=m {
            for l2 in 1..l1 {
                let pc = spec.cross(l1, l2).expect("validated shape");
                cross.push(CrossEntry {
                    l1,
                    l2,
                    rho: pc.binding_rho(),
                    q: pc.q(),
                });
            }
        }
        let mut serial = Vec::new();
        for k in 1..=p {
            for l1 in 1..=m {
                for l2 in 1..=m {
                    let pc = spec.serial(l1, l2, k).expect("validated shape");
                    serial.push(SerialEntry {
                        l1,
                        l2,
                        k,
                        rho: pc.binding_rho(),
                        q: pc.q(),
                    });
                }
            }
        }
        Self {
            m,
            p,
            marginals,
            cross,
            serial,
        }
    }
}
