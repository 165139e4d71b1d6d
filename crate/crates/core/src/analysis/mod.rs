//! POIS statistics and the independent-dimension infeasibility model.

mod edpois;
mod probability;

pub use edpois::{classify, summarize, ColorClass, Edpois, Summary};
pub use probability::{format_real, monte_carlo_infeasibility, p_max, prob_infeasible, tabulate_pmax, PmaxTable};
