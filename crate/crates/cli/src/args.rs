use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use pois_core::{Crossover, Mutation, ObjectiveKind, ParentFitness, Strategy};

fn parse_scale_factor(s: &str) -> Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f > 0.0 && f <= 2.0 {
        Ok(f)
    } else {
        Err(format!("F must lie in (0, 2], got {f}"))
    }
}

fn parse_rate(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("value must lie in [0, 1], got {v}"))
    }
}

fn parse_named<T: std::str::FromStr<Err = pois_core::Error>>(s: &str) -> Result<T, String> {
    s.parse::<T>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "pois",
    version,
    about = "Count and study infeasible solutions generated by Differential Evolution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute one run and print its record as a CSV row
    Run(RunArgs),
    /// Sweep a configuration grid and write the results CSV
    Grid(GridArgs),
    /// Summarise each configuration's POIS distribution
    Analyze(AnalyzeArgs),
    /// Draw the EDPOIS lattice of one configuration family as SVG
    Plot(PlotArgs),
    /// Tabulate the largest per-dimension infeasibility probability
    Tabulate(TabulateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Dimensionality of the unit hypercube
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Evaluation budget [default: 10000 * n]
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub pop_size: usize,
    #[arg(long, value_parser = parse_scale_factor)]
    pub f: f64,
    #[arg(long, value_parser = parse_rate)]
    pub cr: f64,
    #[arg(long, value_parser = parse_named::<Mutation>)]
    pub mutation: Mutation,
    #[arg(long, value_parser = parse_named::<Crossover>)]
    pub crossover: Crossover,
    #[arg(long, value_parser = parse_named::<Strategy>)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_named::<ObjectiveKind>, default_value = "f0")]
    pub objective: ObjectiveKind,
    #[arg(long, value_parser = parse_named::<ParentFitness>, default_value = "redraw")]
    pub parent_fitness: ParentFitness,
    /// Print the column names before the record
    #[arg(long)]
    pub header: bool,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// JSON grid file (see configs/default_grid.json)
    #[arg(required_unless_present = "default_grid")]
    pub grid_file: Option<PathBuf>,
    /// Use the built-in full study grid instead of a file
    #[arg(long, conflicts_with = "grid_file")]
    pub default_grid: bool,
    #[arg(long, default_value_t = 1)]
    pub parallelism: usize,
    /// Results CSV; an existing partial file is resumed
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub budget_per_dim: Option<u64>,
    #[arg(long)]
    pub runs: Option<u64>,
    #[arg(long)]
    pub master_seed: Option<u64>,
    #[arg(long, value_parser = parse_named::<ParentFitness>)]
    pub parent_fitness: Option<ParentFitness>,
    /// Stop after this many new runs; rerun the command to continue
    #[arg(long)]
    pub max_runs: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct FamilyFilter {
    #[arg(long, value_parser = parse_named::<Mutation>)]
    pub mutation: Option<Mutation>,
    #[arg(long, value_parser = parse_named::<Crossover>)]
    pub crossover: Option<Crossover>,
    #[arg(long, value_parser = parse_named::<Strategy>)]
    pub strategy: Option<Strategy>,
    #[arg(long)]
    pub pop_size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub results: PathBuf,
    #[command(flatten)]
    pub filter: FamilyFilter,
    /// Expected runs per configuration [default: the largest count present]
    #[arg(long)]
    pub runs: Option<usize>,
    /// Write the summary here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub results: PathBuf,
    #[arg(long, value_parser = parse_named::<Mutation>)]
    pub mutation: Mutation,
    #[arg(long, value_parser = parse_named::<Crossover>)]
    pub crossover: Crossover,
    #[arg(long, value_parser = parse_named::<Strategy>)]
    pub strategy: Strategy,
    #[arg(long)]
    pub pop_size: usize,
    /// F values of the lattice rows [default: the 10-point study grid]
    #[arg(long, value_delimiter = ',', value_parser = parse_scale_factor)]
    pub f_values: Option<Vec<f64>>,
    /// Cr values of the lattice columns [default: the 5-point study grid]
    #[arg(long, value_delimiter = ',', value_parser = parse_rate)]
    pub cr_values: Option<Vec<f64>>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TabulateArgs {
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.001,0.005,0.01,0.05,0.1,0.2,0.3,0.5"
    )]
    pub t_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,30,100,500")]
    pub n_grid: Vec<u32>,
    /// CSV destination [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also draw the shaded p_max regions as SVG
    #[arg(long)]
    pub svg: Option<PathBuf>,
}
