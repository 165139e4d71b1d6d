//! Shared fixtures for the criterion benches.

use pois_core::{Crossover, DeConfig, Mutation, ParentFitness, Strategy};

/// The heaviest cell of the default sweep shape, at a reduced budget.
pub fn heavy_config(budget: u64) -> DeConfig {
    DeConfig {
        pop_size: 100,
        scale_factor: 0.916,
        crossover_rate: 0.52,
        mutation: Mutation::Rand2,
        crossover: Crossover::Bin,
        strategy: Strategy::Cotn,
        budget,
        parent_fitness: ParentFitness::Redraw,
    }
}

/// Points in `[-10, 11]^n`, roughly half of their coordinates infeasible for
/// the unit box.
pub fn overshooting_points(count: usize, n: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|k| (0..n).map(|i| ((k * 31 + i * 17) % 211) as f64 / 10.0 - 10.0).collect())
        .collect()
}
