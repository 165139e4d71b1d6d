//! Differential Evolution instrumented to count how many of the solutions it
//! generates fall outside the search box, plus the tooling to sweep DE
//! settings and study the resulting POIS (proportion of infeasible
//! solutions) distributions.
//!
//! The crate is organised as:
//! - [`domain`], [`rng`]: the search box, individuals and seeded streams
//! - [`objective`]: the pure-noise `f0` and a sphere sanity function
//! - [`engine`]: mutation, crossover and the generational loop
//! - [`boundary`]: saturation, toroidal, mirror, COTN and penalty handling
//! - [`analysis`]: EDPOIS classes and summaries, the infeasibility model
//! - [`runner`]: grid expansion, parallel execution, CSV results

pub mod analysis;
pub mod boundary;
pub mod domain;
pub mod engine;
pub mod error;
pub mod objective;
pub mod rng;
pub mod runner;

pub use boundary::{CorrectionOutcome, Strategy};
pub use domain::{Domain, Individual, Population};
pub use engine::{run_de, Crossover, DeConfig, Mutation, ParentFitness, RunRecord};
pub use error::{Error, Result};
pub use objective::{Objective, ObjectiveKind};
pub use rng::{derive_substream, RngStream};
