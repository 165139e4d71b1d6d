//! Binomial and exponential crossover.
//!
//! Both start from a copy of the target and overwrite the components chosen
//! by a mask with the mutant's. The mask helpers are public so that the
//! inheritance pattern itself can be tested.

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::config::Crossover;

/// Binomial mask: component `i` comes from the mutant iff `U_i <= Cr` or
/// `i` is the forced index.
pub fn binomial_mask(n: usize, cr: f64, rng: &mut RngStream) -> Vec<bool> {
    let forced = rng.index(n);
    (0..n)
        .map(|i| {
            let u = rng.uniform_open_closed();
            u <= cr || i == forced
        })
        .collect()
}

/// Exponential mask: a circular block starting at a uniform index. After each
/// copied component a fresh `U` is drawn, and copying continues while
/// `U <= Cr` and the block has not wrapped back to its start.
pub fn exponential_mask(n: usize, cr: f64, rng: &mut RngStream) -> Vec<bool> {
    let start = rng.index(n);
    let mut mask = vec![false; n];
    let mut i = start;
    loop {
        mask[i] = true;
        i = (i + 1) % n;
        let u = rng.uniform_open_closed();
        if !(u <= cr && i != start) {
            break;
        }
    }
    mask
}

fn apply_mask(target: &[f64], mutant: &[f64], mask: &[bool]) -> Vec<f64> {
    target
        .iter()
        .zip(mutant)
        .zip(mask)
        .map(|((&t, &m), &take)| if take { m } else { t })
        .collect()
}

pub fn crossover_bin(target: &[f64], mutant: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    Error::check_len(target.len(), mutant.len())?;
    let mask = binomial_mask(target.len(), cr, rng);
    Ok(apply_mask(target, mutant, &mask))
}

pub fn crossover_exp(target: &[f64], mutant: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    Error::check_len(target.len(), mutant.len())?;
    let mask = exponential_mask(target.len(), cr, rng);
    Ok(apply_mask(target, mutant, &mask))
}

impl Crossover {
    pub fn mask(self, n: usize, cr: f64, rng: &mut RngStream) -> Vec<bool> {
        match self {
            Crossover::Bin => binomial_mask(n, cr, rng),
            Crossover::Exp => exponential_mask(n, cr, rng),
        }
    }

    pub fn apply(self, target: &[f64], mutant: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
        match self {
            Crossover::Bin => crossover_bin(target, mutant, cr, rng),
            Crossover::Exp => crossover_exp(target, mutant, cr, rng),
        }
    }
}
