//! Mutation operators.
//!
//! Donors are mutually distinct population indices drawn uniformly; they may
//! coincide with the target. No feasibility check happens here.

use crate::domain::Population;
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::config::Mutation;

/// `x1 + F (x2 - x3)`
pub fn rand1(x1: &[f64], x2: &[f64], x3: &[f64], f: f64) -> Vec<f64> {
    (0..x1.len()).map(|i| x1[i] + f * (x2[i] - x3[i])).collect()
}

/// `x1 + F (x2 - x3) + F (x4 - x5)`
pub fn rand2(x1: &[f64], x2: &[f64], x3: &[f64], x4: &[f64], x5: &[f64], f: f64) -> Vec<f64> {
    (0..x1.len())
        .map(|i| x1[i] + f * (x2[i] - x3[i]) + f * (x4[i] - x5[i]))
        .collect()
}

/// `x_best + F (x1 - x2)`
pub fn best1(best: &[f64], x1: &[f64], x2: &[f64], f: f64) -> Vec<f64> {
    rand1(best, x1, x2, f)
}

/// `x + F (x_best - x) + F (x1 - x2)`
pub fn current_to_best1(x: &[f64], best: &[f64], x1: &[f64], x2: &[f64], f: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| x[i] + f * (best[i] - x[i]) + f * (x1[i] - x2[i]))
        .collect()
}

/// Draws `k` mutually distinct indices from `0..n` by rejection.
pub fn distinct_indices(n: usize, k: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if n < k {
        return Err(Error::config(format!(
            "need {k} distinct donors from a population of {n}"
        )));
    }
    let mut picked = Vec::with_capacity(k);
    while picked.len() < k {
        let r = rng.index(n);
        if !picked.contains(&r) {
            picked.push(r);
        }
    }
    Ok(picked)
}

impl Mutation {
    /// Builds the mutant for slot `target` using the population's current
    /// best member.
    pub fn mutate(self, pop: &Population, target: usize, f: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
        let r = distinct_indices(pop.len(), self.donors(), rng)?;
        let x = |i: usize| pop.get(i).coords.as_slice();
        Ok(match self {
            Mutation::Rand1 => rand1(x(r[0]), x(r[1]), x(r[2]), f),
            Mutation::Rand2 => rand2(x(r[0]), x(r[1]), x(r[2]), x(r[3]), x(r[4]), f),
            Mutation::Best1 => best1(&pop.best().coords, x(r[0]), x(r[1]), f),
            Mutation::CurrentToBest1 => current_to_best1(x(target), &pop.best().coords, x(r[0]), x(r[1]), f),
        })
    }
}
