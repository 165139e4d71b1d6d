//! Grid expansion, parallel execution and results persistence.

mod execute;
mod grid;
mod results;

pub use execute::{execute, run_pair, ExecuteOptions, Execution, RunFailure};
pub use grid::{
    default_grid, expand, Expansion, GridSpec, Rejection, DEFAULT_CR_VALUES, DEFAULT_F_VALUES, DEFAULT_POP_SIZES,
};
pub use results::{load, persist, ResultRow, ResultsTable, RunOutcome, RESULTS_HEADER};
