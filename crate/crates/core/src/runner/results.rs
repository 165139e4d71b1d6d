//! Results table and its CSV form.
//!
//! Reals are written with 17 significant digits so every value round-trips.
//! A failed run is kept as a row with empty `pois` and `best_fitness`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::analysis::format_real;
use crate::boundary::Strategy;
use crate::engine::{Crossover, DeConfig, Mutation};
use crate::error::{Error, Result};

pub const RESULTS_HEADER: &str =
    "config_id,mutation,crossover,strategy,N,F,Cr,run_index,seed,pois,best_fitness,evaluations_used";

const COLUMNS: [&str; 12] = [
    "config_id",
    "mutation",
    "crossover",
    "strategy",
    "N",
    "F",
    "Cr",
    "run_index",
    "seed",
    "pois",
    "best_fitness",
    "evaluations_used",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunOutcome {
    Completed { pois: f64, best_fitness: f64 },
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub config_id: u64,
    pub mutation: Mutation,
    pub crossover: Crossover,
    pub strategy: Strategy,
    pub pop_size: usize,
    pub scale_factor: f64,
    pub crossover_rate: f64,
    pub run_index: u64,
    pub seed: u64,
    pub outcome: RunOutcome,
    pub evaluations_used: u64,
}

impl ResultRow {
    pub fn pois(&self) -> Option<f64> {
        match self.outcome {
            RunOutcome::Completed { pois, .. } => Some(pois),
            RunOutcome::Failed => None,
        }
    }

    /// Whether the row's settings are those of `config`.
    pub fn matches(&self, config: &DeConfig) -> bool {
        self.mutation == config.mutation
            && self.crossover == config.crossover
            && self.strategy == config.strategy
            && self.pop_size == config.pop_size
            && self.scale_factor == config.scale_factor
            && self.crossover_rate == config.crossover_rate
    }

    pub fn to_csv_line(&self) -> String {
        let (pois, best) = match self.outcome {
            RunOutcome::Completed { pois, best_fitness } => (format_real(pois), format_real(best_fitness)),
            RunOutcome::Failed => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.config_id,
            self.mutation,
            self.crossover,
            self.strategy,
            self.pop_size,
            format_real(self.scale_factor),
            format_real(self.crossover_rate),
            self.run_index,
            self.seed,
            pois,
            best,
            self.evaluations_used
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultsTable {
    pub rows: Vec<ResultRow>,
}

impl ResultsTable {
    pub fn new(rows: Vec<ResultRow>) -> Self {
        Self { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Orders rows by `(config_id, run_index)`.
    pub fn sort(&mut self) {
        self.rows.sort_by_key(|r| (r.config_id, r.run_index));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 + self.rows.len() * 160);
        out.push_str(RESULTS_HEADER);
        out.push('\n');
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.to_csv_line());
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
        if headers.len() != COLUMNS.len() || headers.iter().zip(COLUMNS).any(|(a, b)| a != b) {
            return Err(Error::Parse {
                line: 1,
                column: "header".into(),
                message: format!("expected header `{RESULTS_HEADER}`"),
            });
        }
        let mut rows = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for record in reader.records() {
            let record = record.map_err(|e| csv_error(e, 0))?;
            let line = record.position().map_or(0, |p| p.line());
            let row = parse_row(&record, line)?;
            if !seen.insert((row.config_id, row.run_index)) {
                return Err(Error::Parse {
                    line,
                    column: "run_index".into(),
                    message: format!("duplicate row for config {} run {}", row.config_id, row.run_index),
                });
            }
            rows.push(row);
        }
        Ok(Self { rows })
    }
}

pub fn persist(table: &ResultsTable, path: &Path) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(table.to_csv().as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<ResultsTable> {
    ResultsTable::from_csv(&fs::read_to_string(path)?)
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    Error::Parse {
        line,
        column: "-".into(),
        message: e.to_string(),
    }
}

fn parse_row(record: &csv::StringRecord, line: u64) -> Result<ResultRow> {
    let field = |i: usize| record.get(i).unwrap_or("");
    let err = |i: usize, message: String| Error::Parse {
        line,
        column: format!("{} ({})", i + 1, COLUMNS[i]),
        message,
    };
    fn num<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        s.trim().parse::<T>().map_err(|e| format!("`{s}`: {e}"))
    }
    let probability = |i: usize| -> Result<f64> {
        let v: f64 = num(field(i)).map_err(|m| err(i, m))?;
        if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(err(i, format!("value {v} outside [0, 1]")))
        }
    };

    if record.len() != COLUMNS.len() {
        return Err(Error::Parse {
            line,
            column: "-".into(),
            message: format!("expected {} fields, found {}", COLUMNS.len(), record.len()),
        });
    }
    let config_id = num(field(0)).map_err(|m| err(0, m))?;
    let mutation = field(1).parse::<Mutation>().map_err(|e| err(1, e.to_string()))?;
    let crossover = field(2).parse::<Crossover>().map_err(|e| err(2, e.to_string()))?;
    let strategy = field(3).parse::<Strategy>().map_err(|e| err(3, e.to_string()))?;
    let pop_size = num(field(4)).map_err(|m| err(4, m))?;
    let scale_factor: f64 = num(field(5)).map_err(|m| err(5, m))?;
    if !(scale_factor > 0.0 && scale_factor <= 2.0) {
        return Err(err(5, format!("F {scale_factor} outside (0, 2]")));
    }
    let crossover_rate = probability(6)?;
    let run_index = num(field(7)).map_err(|m| err(7, m))?;
    let seed = num(field(8)).map_err(|m| err(8, m))?;
    let outcome = if field(9).is_empty() && field(10).is_empty() {
        RunOutcome::Failed
    } else {
        RunOutcome::Completed {
            pois: probability(9)?,
            best_fitness: num(field(10)).map_err(|m| err(10, m))?,
        }
    };
    let evaluations_used = num(field(11)).map_err(|m| err(11, m))?;
    Ok(ResultRow {
        config_id,
        mutation,
        crossover,
        strategy,
        pop_size,
        scale_factor,
        crossover_rate,
        run_index,
        seed,
        outcome,
        evaluations_used,
    })
}
