use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boundary::Strategy;
use crate::engine::{Crossover, DeConfig, Mutation, ParentFitness};
use crate::error::{Error, Result};
use crate::objective::ObjectiveKind;

/// A full factorial sweep over DE settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub pop_sizes: Vec<usize>,
    pub cr_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub mutations: Vec<Mutation>,
    pub crossovers: Vec<Crossover>,
    pub strategies: Vec<Strategy>,
    pub n: usize,
    pub budget_per_dimension: u64,
    pub runs_per_config: u64,
    pub master_seed: u64,
    pub objective: ObjectiveKind,
    #[serde(default)]
    pub parent_fitness: ParentFitness,
}

pub const DEFAULT_POP_SIZES: [usize; 3] = [5, 20, 100];
pub const DEFAULT_CR_VALUES: [f64; 5] = [0.05, 0.285, 0.52, 0.755, 0.99];
pub const DEFAULT_F_VALUES: [f64; 10] = [0.05, 0.266, 0.483, 0.7, 0.916, 1.133, 1.350, 1.566, 1.783, 2.0];

/// The full study: 3 population sizes, 5 crossover rates, 10 scale factors,
/// every mutation, crossover and strategy, 30 dimensions, `10^4 n`
/// evaluations per run and 50 runs per configuration, minimising `f0`.
pub fn default_grid() -> GridSpec {
    GridSpec {
        pop_sizes: DEFAULT_POP_SIZES.to_vec(),
        cr_values: DEFAULT_CR_VALUES.to_vec(),
        f_values: DEFAULT_F_VALUES.to_vec(),
        mutations: Mutation::ALL.to_vec(),
        crossovers: Crossover::ALL.to_vec(),
        strategies: Strategy::ALL.to_vec(),
        n: 30,
        budget_per_dimension: 10_000,
        runs_per_config: 50,
        master_seed: 0,
        objective: ObjectiveKind::F0,
        parent_fitness: ParentFitness::Redraw,
    }
}

impl GridSpec {
    pub fn budget(&self) -> u64 {
        self.budget_per_dimension * self.n as u64
    }

    /// Number of cells before precondition filtering.
    pub fn cell_count(&self) -> usize {
        self.pop_sizes.len()
            * self.cr_values.len()
            * self.f_values.len()
            * self.mutations.len()
            * self.crossovers.len()
            * self.strategies.len()
    }

    pub fn validate(&self) -> Result<()> {
        let lists = [
            ("pop_sizes", self.pop_sizes.len()),
            ("cr_values", self.cr_values.len()),
            ("f_values", self.f_values.len()),
            ("mutations", self.mutations.len()),
            ("crossovers", self.crossovers.len()),
            ("strategies", self.strategies.len()),
        ];
        if let Some((name, _)) = lists.iter().find(|(_, len)| *len == 0) {
            return Err(Error::config(format!("grid list `{name}` is empty")));
        }
        if self.n == 0 {
            return Err(Error::config("dimensionality n must be at least 1"));
        }
        if self.budget_per_dimension == 0 {
            return Err(Error::config("budget_per_dimension must be at least 1"));
        }
        if self.runs_per_config == 0 {
            return Err(Error::config("runs_per_config must be at least 1"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let grid: GridSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line() as u64,
            column: e.column().to_string(),
            message: e.to_string(),
        })?;
        grid.validate()?;
        Ok(grid)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }
}

/// A grid cell that failed engine preconditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Rejection {
    pub config: DeConfig,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Expansion {
    /// Accepted configurations; the position is the `config_id`.
    pub configs: Vec<DeConfig>,
    pub rejections: Vec<Rejection>,
}

/// Expands the grid in lexicographic order over
/// (strategy, mutation, crossover, N, F, Cr), each following its list order.
/// `config_id` numbers accepted cells consecutively from 0.
pub fn expand(grid: &GridSpec) -> Result<Expansion> {
    grid.validate()?;
    let budget = grid.budget();
    let mut configs = Vec::new();
    let mut rejections = Vec::new();
    for &strategy in &grid.strategies {
        for &mutation in &grid.mutations {
            for &crossover in &grid.crossovers {
                for &pop_size in &grid.pop_sizes {
                    for &scale_factor in &grid.f_values {
                        for &crossover_rate in &grid.cr_values {
                            let config = DeConfig {
                                pop_size,
                                scale_factor,
                                crossover_rate,
                                mutation,
                                crossover,
                                strategy,
                                budget,
                                parent_fitness: grid.parent_fitness,
                            };
                            match config.validate() {
                                Ok(()) => configs.push(config),
                                Err(e) => rejections.push(Rejection {
                                    config,
                                    reason: e.to_string(),
                                }),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Expansion { configs, rejections })
}
