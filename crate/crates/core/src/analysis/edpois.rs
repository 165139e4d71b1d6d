use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Colour class of an empirical POIS distribution.
///
/// Bands (closed at both ends):
/// - teal: `[0, 0.001]` or `[0.999, 1]`
/// - orange: `[0.001, 0.01]` or `[0.99, 0.999]`
/// - violet: anything else
///
/// A series is teal if every value is in a teal band, otherwise orange if
/// every value is in an orange or teal band, otherwise violet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorClass {
    Teal,
    Orange,
    Violet,
}

impl ColorClass {
    pub fn name(self) -> &'static str {
        match self {
            ColorClass::Teal => "teal",
            ColorClass::Orange => "orange",
            ColorClass::Violet => "violet",
        }
    }

    /// SVG fill colour.
    pub fn hex(self) -> &'static str {
        match self {
            ColorClass::Teal => "#008080",
            ColorClass::Orange => "#ff8c00",
            ColorClass::Violet => "#8a2be2",
        }
    }
}

impl fmt::Display for ColorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "teal" => Ok(ColorClass::Teal),
            "orange" => Ok(ColorClass::Orange),
            "violet" => Ok(ColorClass::Violet),
            _ => Err(Error::argument(format!("unknown colour class `{s}`"))),
        }
    }
}

fn in_teal_band(v: f64) -> bool {
    (0.0..=0.001).contains(&v) || (0.999..=1.0).contains(&v)
}

fn in_orange_band(v: f64) -> bool {
    (0.001..=0.01).contains(&v) || (0.99..=0.999).contains(&v)
}

pub fn classify(values: &[f64]) -> Result<ColorClass> {
    if values.is_empty() {
        return Err(Error::argument("cannot classify an empty POIS series"));
    }
    if values.iter().all(|&v| in_teal_band(v)) {
        Ok(ColorClass::Teal)
    } else if values.iter().all(|&v| in_teal_band(v) || in_orange_band(v)) {
        Ok(ColorClass::Orange)
    } else {
        Ok(ColorClass::Violet)
    }
}

/// POIS values of one configuration, in run-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Edpois {
    pub config_id: u64,
    values: Vec<f64>,
}

impl Edpois {
    pub fn new(config_id: u64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("EDPOIS needs at least one run"));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::argument(format!("POIS value {v} outside [0, 1]")));
        }
        Ok(Self { config_id, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn color_class(&self) -> ColorClass {
        classify(&self.values).expect("non-empty by construction")
    }

    pub fn summary(&self) -> Summary {
        summarize(&self.values).expect("non-empty by construction")
    }

    /// Values in ascending order, as drawn in the bar panels.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (divisor `m - 1`); zero for a single value.
    pub std_dev: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::argument("cannot summarize an empty series"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    let mean = sorted.iter().sum::<f64>() / m as f64;
    let median = if m % 2 == 1 {
        sorted[m / 2]
    } else {
        (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0
    };
    let std_dev = if m > 1 {
        let ss: f64 = sorted.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (m - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(Summary {
        min: sorted[0],
        max: sorted[m - 1],
        mean,
        median,
        std_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&[0.0; 5]).unwrap(), ColorClass::Teal);
        assert_eq!(classify(&[1.0, 0.9995, 0.0]).unwrap(), ColorClass::Teal);
        assert_eq!(classify(&[0.995; 4]).unwrap(), ColorClass::Orange);
        assert_eq!(classify(&[0.0, 0.005]).unwrap(), ColorClass::Orange);
        assert_eq!(classify(&[0.0, 0.5]).unwrap(), ColorClass::Violet);
        assert!(classify(&[]).is_err());
    }

    #[test]
    fn band_edges_are_closed() {
        assert_eq!(classify(&[0.001]).unwrap(), ColorClass::Teal);
        assert_eq!(classify(&[0.999]).unwrap(), ColorClass::Teal);
        assert_eq!(classify(&[0.01]).unwrap(), ColorClass::Orange);
        assert_eq!(classify(&[0.99]).unwrap(), ColorClass::Orange);
        assert_eq!(classify(&[0.0100001]).unwrap(), ColorClass::Violet);
    }

    #[test]
    fn summary_examples() {
        let s = summarize(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean, s.median, s.std_dev), (0.0, 0.0, 0.0, 0.0, 0.0));
        let s = summarize(&[1.0, 0.0]).unwrap();
        assert_eq!(s.mean, 0.5);
        assert_eq!(s.median, 0.5);
        assert!((s.std_dev - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn edpois_range_checked() {
        assert!(Edpois::new(0, vec![0.2, 1.3]).is_err());
        assert!(Edpois::new(0, vec![]).is_err());
        let e = Edpois::new(3, vec![0.4, 0.1, 0.3]).unwrap();
        assert_eq!(e.sorted(), vec![0.1, 0.3, 0.4]);
        assert_eq!(e.values(), &[0.4, 0.1, 0.3]);
    }
}
