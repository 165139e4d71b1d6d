//! Strategies for infeasible candidates.
//!
//! Each strategy works coordinate by coordinate and leaves feasible
//! coordinates bit-identical. Saturation, toroidal and mirror are
//! deterministic and defined for arbitrarily large overshoots; COTN resamples
//! violating coordinates near the violated bound; penalty keeps the point as
//! is and marks it for rejection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Standard deviation of the one-tailed normal used by COTN, in units of the
/// domain width.
pub const COTN_SIGMA: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Saturation,
    Toroidal,
    Mirror,
    Cotn,
    Penalty,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Saturation,
        Strategy::Toroidal,
        Strategy::Mirror,
        Strategy::Cotn,
        Strategy::Penalty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Saturation => "saturation",
            Strategy::Toroidal => "toroidal",
            Strategy::Mirror => "mirror",
            Strategy::Cotn => "cotn",
            Strategy::Penalty => "penalty",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::argument(format!("unknown strategy `{s}`")))
    }
}

/// What the engine evaluates in place of a (possibly infeasible) offspring.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionOutcome {
    pub corrected: Vec<f64>,
    pub was_infeasible: bool,
    pub penalty_applied: bool,
}

/// Clamps each coordinate to its nearest bound.
pub fn saturate(point: &[f64], domain: &Domain) -> Vec<f64> {
    map_infeasible(point, domain, |x, a, b| x.clamp(a, b))
}

/// Wraps each coordinate around the ring `[a, b)`.
pub fn toroidal(point: &[f64], domain: &Domain) -> Vec<f64> {
    map_infeasible(point, domain, |x, a, b| {
        let w = b - a;
        (a + (x - a).rem_euclid(w)).clamp(a, b)
    })
}

/// Folds each coordinate back by repeated reflection off the bounds
/// (a triangular wave of period `2 (b - a)`).
pub fn mirror(point: &[f64], domain: &Domain) -> Vec<f64> {
    map_infeasible(point, domain, |x, a, b| {
        let w = b - a;
        let t = (x - a).rem_euclid(2.0 * w);
        let folded = if t > w { 2.0 * w - t } else { t };
        (a + folded).clamp(a, b)
    })
}

/// Complete one-tailed normal correction.
///
/// A coordinate below its lower bound is replaced by `|N(0, sigma)|`, one
/// above its upper bound by `1 - |N(0, sigma)|`, redrawing until the value
/// lies in `[0, 1]`; the result is then mapped affinely onto `[a, b]`.
pub fn cotn(point: &[f64], domain: &Domain, rng: &mut RngStream) -> Vec<f64> {
    point
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let (a, b) = domain.bounds(i);
            if domain.contains_coord(i, x) {
                return x;
            }
            let offset = half_normal_unit(rng);
            let u = if x < a { offset } else { 1.0 - offset };
            (a + u * (b - a)).clamp(a, b)
        })
        .collect()
}

/// `|N(0, sigma)|` conditioned on landing in `[0, 1]`.
fn half_normal_unit(rng: &mut RngStream) -> f64 {
    loop {
        let d = (rng.standard_normal() * COTN_SIGMA).abs();
        if d <= 1.0 {
            return d;
        }
    }
}

/// Leaves the coordinates alone and flags infeasible points so the engine
/// can give them a fitness no feasible point can lose to.
pub fn apply_penalty(point: &[f64], domain: &Domain) -> CorrectionOutcome {
    let was_infeasible = !feasible(point, domain);
    CorrectionOutcome {
        corrected: point.to_vec(),
        was_infeasible,
        penalty_applied: was_infeasible,
    }
}

/// Applies `strategy` to `point`.
///
/// Non-finite coordinates are reported as a numeric error instead of being
/// repaired: they only arise from a broken mutation chain.
pub fn correct(strategy: Strategy, point: &[f64], domain: &Domain, rng: &mut RngStream) -> Result<CorrectionOutcome> {
    Error::check_len(domain.dim(), point.len())?;
    if let Some(i) = point.iter().position(|x| !x.is_finite()) {
        return Err(Error::Numeric(format!("coordinate {i} of a candidate is {}", point[i])));
    }
    if strategy == Strategy::Penalty {
        return Ok(apply_penalty(point, domain));
    }
    if feasible(point, domain) {
        return Ok(CorrectionOutcome {
            corrected: point.to_vec(),
            was_infeasible: false,
            penalty_applied: false,
        });
    }
    let corrected = match strategy {
        Strategy::Saturation => saturate(point, domain),
        Strategy::Toroidal => toroidal(point, domain),
        Strategy::Mirror => mirror(point, domain),
        Strategy::Cotn => cotn(point, domain, rng),
        Strategy::Penalty => unreachable!(),
    };
    Ok(CorrectionOutcome {
        corrected,
        was_infeasible: true,
        penalty_applied: false,
    })
}

fn feasible(point: &[f64], domain: &Domain) -> bool {
    domain.contains(point).expect("point length checked against the domain")
}

fn map_infeasible(point: &[f64], domain: &Domain, f: impl Fn(f64, f64, f64) -> f64) -> Vec<f64> {
    point
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if domain.contains_coord(i, x) {
                x
            } else {
                let (a, b) = domain.bounds(i);
                f(x, a, b)
            }
        })
        .collect()
}
