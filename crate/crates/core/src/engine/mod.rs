//! The Differential Evolution loop, instrumented to count infeasible
//! offspring.

mod config;
mod crossover;
mod mutation;
mod run;

pub use config::{Crossover, DeConfig, Mutation, ParentFitness, RunRecord};
pub use crossover::{binomial_mask, crossover_bin, crossover_exp, exponential_mask};
pub use mutation::{best1, current_to_best1, distinct_indices, rand1, rand2};
pub use run::{breed, run_de, run_de_observed, Observer, Offspring, PENALTY_FITNESS};
