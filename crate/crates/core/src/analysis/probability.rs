//! Probability that a candidate is infeasible in at least one of `n`
//! dimensions when each dimension independently fails with probability `p`.

use crate::error::{Error, Result};
use crate::rng::RngStream;

fn check_probability(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::argument(format!("{name} must lie in [0, 1], got {v}")))
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::argument("dimensionality must be at least 1"))
    } else {
        Ok(())
    }
}

/// `1 - (1 - p)^n`, evaluated as `-expm1(n * ln_1p(-p))` so tiny `p` keeps
/// full relative precision.
pub fn prob_infeasible(p: f64, n: u32) -> Result<f64> {
    check_probability("p", p)?;
    check_dim(n)?;
    if p == 1.0 {
        return Ok(1.0);
    }
    Ok(-(f64::from(n) * (-p).ln_1p()).exp_m1())
}

/// Largest `p` with `1 - (1 - p)^n <= t`, i.e. `1 - (1 - t)^(1/n)`.
pub fn p_max(t: f64, n: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::argument(format!("t must lie in [0, 1), got {t}")));
    }
    check_dim(n)?;
    Ok(-((-t).ln_1p() / f64::from(n)).exp_m1())
}

/// `p_max` over a grid: `values[row][col]` is `p_max(t_grid[col], n_grid[row])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PmaxTable {
    pub t_grid: Vec<f64>,
    pub n_grid: Vec<u32>,
    pub values: Vec<Vec<f64>>,
}

impl PmaxTable {
    pub fn get(&self, t_index: usize, n_index: usize) -> f64 {
        self.values[n_index][t_index]
    }

    /// Wide CSV: one row per `n`, one column per `t`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for t in &self.t_grid {
            out.push(',');
            out.push_str(&format_real(*t));
        }
        out.push('\n');
        for (n, row) in self.n_grid.iter().zip(&self.values) {
            out.push_str(&n.to_string());
            for v in row {
                out.push(',');
                out.push_str(&format_real(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn tabulate_pmax(t_grid: &[f64], n_grid: &[u32]) -> Result<PmaxTable> {
    let values = n_grid
        .iter()
        .map(|&n| t_grid.iter().map(|&t| p_max(t, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PmaxTable {
        t_grid: t_grid.to_vec(),
        n_grid: n_grid.to_vec(),
        values,
    })
}

/// Fraction of `trials` simulated candidates that violate at least one of
/// `n` independent per-dimension checks with failure probability `p`.
pub fn monte_carlo_infeasibility(p: f64, n: u32, trials: u64, rng: &mut RngStream) -> Result<f64> {
    check_probability("p", p)?;
    check_dim(n)?;
    if trials == 0 {
        return Err(Error::argument("trials must be at least 1"));
    }
    let hits = (0..trials)
        .filter(|_| {
            // no short-circuit: every trial consumes n draws
            (0..n).fold(false, |acc, _| rng.chance(p) | acc)
        })
        .count();
    Ok(hits as f64 / trials as f64)
}
