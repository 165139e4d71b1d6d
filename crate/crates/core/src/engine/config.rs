use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boundary::Strategy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mutation {
    #[serde(rename = "rand/1", alias = "rand1")]
    Rand1,
    #[serde(rename = "rand/2", alias = "rand2")]
    Rand2,
    #[serde(rename = "best/1", alias = "best1")]
    Best1,
    #[serde(rename = "current-to-best/1", alias = "current-to-best1")]
    CurrentToBest1,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::Rand1,
        Mutation::Rand2,
        Mutation::Best1,
        Mutation::CurrentToBest1,
    ];

    /// Number of mutually distinct random donors drawn per mutant.
    pub fn donors(self) -> usize {
        match self {
            Mutation::Rand1 => 3,
            Mutation::Rand2 => 5,
            Mutation::Best1 | Mutation::CurrentToBest1 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Rand1 => "rand/1",
            Mutation::Rand2 => "rand/2",
            Mutation::Best1 => "best/1",
            Mutation::CurrentToBest1 => "current-to-best/1",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        match key.as_str() {
            "rand1" => Ok(Mutation::Rand1),
            "rand2" => Ok(Mutation::Rand2),
            "best1" => Ok(Mutation::Best1),
            "currenttobest1" => Ok(Mutation::CurrentToBest1),
            _ => Err(Error::argument(format!("unknown mutation `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Crossover {
    Bin,
    Exp,
}

impl Crossover {
    pub const ALL: [Crossover; 2] = [Crossover::Bin, Crossover::Exp];

    pub fn name(self) -> &'static str {
        match self {
            Crossover::Bin => "bin",
            Crossover::Exp => "exp",
        }
    }
}

impl fmt::Display for Crossover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Crossover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bin" | "binomial" => Ok(Crossover::Bin),
            "exp" | "exponential" => Ok(Crossover::Exp),
            _ => Err(Error::argument(format!("unknown crossover `{s}`"))),
        }
    }
}

/// Which objective value a target defends its slot with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParentFitness {
    /// Stochastic objectives are sampled again at the target at every
    /// comparison; the extra draw is not charged to the budget.
    /// Deterministic objectives reuse the stored value.
    #[default]
    Redraw,
    /// The value stored when the target was evaluated. On `f0` the stored
    /// value is a minimum over past challenges, so acceptance decays like
    /// `1 / (challenges + 1)` and the population stops moving.
    Cached,
}

impl ParentFitness {
    pub fn name(self) -> &'static str {
        match self {
            ParentFitness::Redraw => "redraw",
            ParentFitness::Cached => "cached",
        }
    }
}

impl fmt::Display for ParentFitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParentFitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "redraw" => Ok(ParentFitness::Redraw),
            "cached" => Ok(ParentFitness::Cached),
            _ => Err(Error::argument(format!("unknown parent fitness mode `{s}`"))),
        }
    }
}

/// One cell of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeConfig {
    pub pop_size: usize,
    pub scale_factor: f64,
    pub crossover_rate: f64,
    pub mutation: Mutation,
    pub crossover: Crossover,
    pub strategy: Strategy,
    /// Total objective evaluations, initialization included.
    pub budget: u64,
    #[serde(default)]
    pub parent_fitness: ParentFitness,
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        let f = self.scale_factor;
        if !(f > 0.0 && f <= 2.0) {
            return Err(Error::config(format!("F must lie in (0, 2], got {f}")));
        }
        let cr = self.crossover_rate;
        if !(0.0..=1.0).contains(&cr) {
            return Err(Error::config(format!("Cr must lie in [0, 1], got {cr}")));
        }
        let need = self.mutation.donors();
        if self.pop_size < need {
            return Err(Error::config(format!(
                "{} needs a population of at least {need}, got {}",
                self.mutation, self.pop_size
            )));
        }
        if self.budget < self.pop_size as u64 {
            return Err(Error::config(format!(
                "budget {} cannot cover the initial population of {}",
                self.budget, self.pop_size
            )));
        }
        Ok(())
    }

    /// `DE/<mutation>/<crossover> <strategy>, N=<pop>` label.
    pub fn family_label(&self) -> String {
        format!(
            "DE/{}/{} {}, N={}",
            self.mutation, self.crossover, self.strategy, self.pop_size
        )
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub infeasible_count: u64,
    pub evaluations_used: u64,
    /// `infeasible_count / budget`.
    pub pois: f64,
    pub best_fitness: f64,
    pub generations: u64,
}
