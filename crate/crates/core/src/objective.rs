//! Objective functions.
//!
//! `f0` ignores its argument and returns a fresh `U(0, 1)` draw on every call,
//! so no two evaluations are correlated and the only thing left to observe in
//! a run is the behaviour of the operators themselves. `Sphere` is a
//! deterministic bowl centred at `(0.5, ..., 0.5)` used to smoke-test
//! convergence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectiveKind {
    #[serde(rename = "f0")]
    F0,
    #[serde(rename = "sphere")]
    Sphere,
}

impl ObjectiveKind {
    /// Whether repeated evaluations at one point may differ.
    pub fn is_stochastic(self) -> bool {
        matches!(self, ObjectiveKind::F0)
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::F0 => "f0",
            ObjectiveKind::Sphere => "sphere",
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(ObjectiveKind::F0),
            "sphere" => Ok(ObjectiveKind::Sphere),
            other => Err(Error::argument(format!(
                "unknown objective `{other}` (expected f0 or sphere)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub domain: Domain,
}

impl Objective {
    pub fn new(kind: ObjectiveKind, domain: Domain) -> Self {
        Self { kind, domain }
    }

    /// Evaluates any point of the right length, feasible or not.
    pub fn evaluate(&self, point: &[f64], rng: &mut RngStream) -> Result<f64> {
        Error::check_len(self.domain.dim(), point.len())?;
        Ok(match self.kind {
            ObjectiveKind::F0 => rng.uniform(),
            ObjectiveKind::Sphere => point.iter().map(|x| (x - 0.5) * (x - 0.5)).sum(),
        })
    }
}
