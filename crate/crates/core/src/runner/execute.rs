use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::domain::Domain;
use crate::engine::{run_de, DeConfig};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::{substream_seed, RngStream};

use super::grid::{expand, GridSpec, Rejection};
use super::results::{persist, ResultRow, ResultsTable, RunOutcome, RESULTS_HEADER};

#[derive(Debug, Clone)]
pub struct ExecuteOptions {
    /// Worker threads; the unit of work is one (config, run) pair.
    pub parallelism: usize,
    /// Results file that is appended to as runs finish and consulted on
    /// start-up to skip pairs that are already done.
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many new runs (simulates an interrupted sweep).
    pub max_new_runs: Option<usize>,
}

impl Default for ExecuteOptions {
    fn default() -> Self {
        Self {
            parallelism: 1,
            checkpoint: None,
            max_new_runs: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunFailure {
    pub config_id: u64,
    pub run_index: u64,
    pub diagnostic: String,
}

#[derive(Debug)]
pub struct Execution {
    /// All rows known after this call, sorted by `(config_id, run_index)`.
    pub table: ResultsTable,
    pub rejections: Vec<Rejection>,
    pub failures: Vec<RunFailure>,
    /// Rows expected for a finished sweep.
    pub expected_rows: usize,
}

impl Execution {
    pub fn is_complete(&self) -> bool {
        self.table.len() == self.expected_rows
    }
}

/// Executes one `(config, run)` pair on `[0, 1]^n`.
pub fn run_pair(grid: &GridSpec, config_id: u64, config: &DeConfig, run_index: u64) -> (ResultRow, Option<String>) {
    let seed = substream_seed(grid.master_seed, config_id, run_index);
    let mut rng = RngStream::new(seed);
    let outcome = Domain::unit(grid.n).and_then(|domain| {
        let objective = Objective::new(grid.objective, domain.clone());
        run_de(config, &domain, &objective, &mut rng)
    });
    let (outcome, evaluations_used, diagnostic) = match outcome {
        Ok(rec) => (
            RunOutcome::Completed {
                pois: rec.pois,
                best_fitness: rec.best_fitness,
            },
            rec.evaluations_used,
            None,
        ),
        Err(e) => (RunOutcome::Failed, 0, Some(e.to_string())),
    };
    let row = ResultRow {
        config_id,
        mutation: config.mutation,
        crossover: config.crossover,
        strategy: config.strategy,
        pop_size: config.pop_size,
        scale_factor: config.scale_factor,
        crossover_rate: config.crossover_rate,
        run_index,
        seed,
        outcome,
        evaluations_used,
    };
    (row, diagnostic)
}

/// Reads a possibly interrupted results file, dropping a trailing partial
/// line left by a killed writer.
fn load_checkpoint(path: &Path) -> Result<ResultsTable> {
    let mut text = fs::read_to_string(path)?;
    if text.is_empty() {
        return Ok(ResultsTable::default());
    }
    if !text.ends_with('\n') {
        let cut = text.rfind('\n').map_or(0, |i| i + 1);
        log::warn!("{}: dropping incomplete trailing line", path.display());
        text.truncate(cut);
        fs::write(path, &text)?;
        if text.is_empty() {
            return Ok(ResultsTable::default());
        }
    }
    ResultsTable::from_csv(&text)
}

fn check_existing(grid: &GridSpec, configs: &[DeConfig], table: &ResultsTable) -> Result<()> {
    for row in &table.rows {
        let known = configs.get(row.config_id as usize).filter(|c| row.matches(c)).is_some();
        let seed_ok = row.seed == substream_seed(grid.master_seed, row.config_id, row.run_index);
        if !known || !seed_ok || row.run_index >= grid.runs_per_config {
            return Err(Error::config(format!(
                "checkpoint row (config {}, run {}) does not belong to this grid",
                row.config_id, row.run_index
            )));
        }
    }
    Ok(())
}

/// Runs every pending `(config, run)` pair of the grid.
///
/// Each pair is seeded from `(master_seed, config_id, run_index)` alone, so
/// the sorted table does not depend on `parallelism` or on how often the
/// sweep was interrupted and resumed. When a checkpoint file is given, rows
/// are appended as they finish, and once every pair is done the file is
/// rewritten in sorted order.
pub fn execute(grid: &GridSpec, options: &ExecuteOptions) -> Result<Execution> {
    if options.parallelism == 0 {
        return Err(Error::argument("parallelism must be at least 1"));
    }
    let expansion = expand(grid)?;
    let configs = &expansion.configs;
    let expected_rows = configs.len() * grid.runs_per_config as usize;

    let existing = match &options.checkpoint {
        Some(p) if p.exists() => load_checkpoint(p)?,
        _ => ResultsTable::default(),
    };
    check_existing(grid, configs, &existing)?;
    let done: HashSet<(u64, u64)> = existing.rows.iter().map(|r| (r.config_id, r.run_index)).collect();

    let mut pending: Vec<(u64, u64)> = (0..configs.len() as u64)
        .flat_map(|c| (0..grid.runs_per_config).map(move |r| (c, r)))
        .filter(|pair| !done.contains(pair))
        .collect();
    if let Some(limit) = options.max_new_runs {
        pending.truncate(limit);
    }

    let sink = match &options.checkpoint {
        Some(p) => {
            let fresh = !p.exists() || fs::metadata(p)?.len() == 0;
            let mut f = OpenOptions::new().create(true).append(true).open(p)?;
            if fresh {
                writeln!(f, "{RESULTS_HEADER}")?;
                f.flush()?;
            }
            Some(Mutex::new(f))
        }
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;

    let produced: Vec<(ResultRow, Option<String>)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&(cid, run)| {
                let result = run_pair(grid, cid, &configs[cid as usize], run);
                if let Some(sink) = &sink {
                    let mut f = sink.lock().expect("results sink poisoned");
                    writeln!(f, "{}", result.0.to_csv_line())
                        .and_then(|_| f.flush())
                        .map_err(Error::from)?;
                }
                Ok(result)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut failures = Vec::new();
    let mut rows = existing.rows;
    for (row, diagnostic) in produced {
        if let Some(diagnostic) = diagnostic {
            log::warn!("config {} run {} failed: {diagnostic}", row.config_id, row.run_index);
            failures.push(RunFailure {
                config_id: row.config_id,
                run_index: row.run_index,
                diagnostic,
            });
        }
        rows.push(row);
    }
    let mut table = ResultsTable::new(rows);
    table.sort();

    drop(sink);
    if let Some(p) = &options.checkpoint {
        if table.len() == expected_rows {
            persist(&table, p)?;
        }
    }

    Ok(Execution {
        table,
        rejections: expansion.rejections,
        failures,
        expected_rows,
    })
}
