use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use pois_core::analysis::{format_real, tabulate_pmax, Edpois, Summary};
use pois_core::runner::{
    default_grid, execute, load, ExecuteOptions, GridSpec, ResultRow, ResultsTable, DEFAULT_CR_VALUES, DEFAULT_F_VALUES,
};
use pois_core::{run_de, DeConfig, Domain, Objective, RngStream};

use crate::args::{AnalyzeArgs, Cli, Command, FamilyFilter, GridArgs, PlotArgs, RunArgs, TabulateArgs};
use crate::svg::{self, Panel};
use crate::{CliError, CliResult};

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Grid(a) => cmd_grid(&a, out),
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Plot(a) => cmd_plot(&a, out),
        Command::Tabulate(a) => cmd_tabulate(&a, out),
    }
}

pub const RUN_HEADER: &str = "seed,infeasible_count,evaluations_used,pois,best_fitness,generations";

pub fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> CliResult {
    let budget = a.budget.unwrap_or(10_000 * a.n as u64);
    let config = DeConfig {
        pop_size: a.pop_size,
        scale_factor: a.f,
        crossover_rate: a.cr,
        mutation: a.mutation,
        crossover: a.crossover,
        strategy: a.strategy,
        budget,
        parent_fitness: a.parent_fitness,
    };
    let domain = Domain::unit(a.n)?;
    let objective = Objective::new(a.objective, domain.clone());
    let rec = run_de(&config, &domain, &objective, &mut RngStream::new(a.seed))?;
    if a.header {
        writeln!(out, "{RUN_HEADER}")?;
    }
    writeln!(
        out,
        "{},{},{},{},{},{}",
        rec.seed,
        rec.infeasible_count,
        rec.evaluations_used,
        format_real(rec.pois),
        format_real(rec.best_fitness),
        rec.generations
    )?;
    Ok(())
}

fn grid_from_args(a: &GridArgs) -> CliResult<GridSpec> {
    let mut grid = if a.default_grid {
        default_grid()
    } else {
        let path = a.grid_file.as_deref().expect("clap requires a grid file");
        let text = fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
        if text.trim().is_empty() {
            return Err(CliError::usage(format!("grid file {} is empty", path.display())));
        }
        GridSpec::from_json(&text).map_err(|e| match e {
            pois_core::Error::Parse { .. } => CliError::usage(format!("{}: {e}", path.display())),
            other => other.into(),
        })?
    };
    if let Some(n) = a.n {
        grid.n = n;
    }
    if let Some(b) = a.budget_per_dim {
        grid.budget_per_dimension = b;
    }
    if let Some(m) = a.runs {
        grid.runs_per_config = m;
    }
    if let Some(s) = a.master_seed {
        grid.master_seed = s;
    }
    if let Some(p) = a.parent_fitness {
        grid.parent_fitness = p;
    }
    grid.validate()?;
    Ok(grid)
}

pub fn cmd_grid(a: &GridArgs, out: &mut dyn Write) -> CliResult {
    let grid = grid_from_args(a)?;
    let options = ExecuteOptions {
        parallelism: a.parallelism,
        checkpoint: Some(a.out.clone()),
        max_new_runs: a.max_runs,
    };
    let ex = execute(&grid, &options)?;
    for r in &ex.rejections {
        writeln!(out, "rejected {}: {}", r.config.family_label(), r.reason)?;
    }
    writeln!(
        out,
        "{} of {} rows in {}{}",
        ex.table.len(),
        ex.expected_rows,
        a.out.display(),
        if ex.is_complete() {
            ""
        } else {
            " (incomplete; rerun to resume)"
        }
    )?;
    if !ex.failures.is_empty() {
        let list: Vec<String> = ex
            .failures
            .iter()
            .map(|f| format!("config {} run {}: {}", f.config_id, f.run_index, f.diagnostic))
            .collect();
        return Err(CliError::numeric(format!(
            "{} runs failed:\n{}",
            list.len(),
            list.join("\n")
        )));
    }
    Ok(())
}

fn filter_matches(f: &FamilyFilter, row: &ResultRow) -> bool {
    f.mutation.is_none_or(|m| m == row.mutation)
        && f.crossover.is_none_or(|c| c == row.crossover)
        && f.strategy.is_none_or(|s| s == row.strategy)
        && f.pop_size.is_none_or(|n| n == row.pop_size)
}

/// One line of the analysis table.
#[derive(Debug, Clone)]
pub struct ConfigSummary {
    pub first: ResultRow,
    pub runs: usize,
    pub failed: usize,
    pub complete: bool,
    pub edpois: Option<Edpois>,
}

pub const ANALYZE_HEADER: &str =
    "config_id,mutation,crossover,strategy,N,F,Cr,runs,failed,complete,class,min,max,mean,median,std_dev";

pub fn summarize_table(
    table: &ResultsTable,
    filter: &FamilyFilter,
    expected_runs: Option<usize>,
) -> CliResult<Vec<ConfigSummary>> {
    let mut groups: BTreeMap<u64, Vec<&ResultRow>> = BTreeMap::new();
    for row in table.rows.iter().filter(|r| filter_matches(filter, r)) {
        groups.entry(row.config_id).or_default().push(row);
    }
    let expected = expected_runs.unwrap_or_else(|| groups.values().map(Vec::len).max().unwrap_or(0));
    groups
        .into_values()
        .map(|mut rows| {
            rows.sort_by_key(|r| r.run_index);
            let values: Vec<f64> = rows.iter().filter_map(|r| r.pois()).collect();
            let failed = rows.len() - values.len();
            let edpois = if values.is_empty() {
                None
            } else {
                Some(Edpois::new(rows[0].config_id, values)?)
            };
            Ok(ConfigSummary {
                first: rows[0].clone(),
                runs: rows.len(),
                failed,
                complete: rows.len() >= expected && failed == 0,
                edpois,
            })
        })
        .collect()
}

fn summary_line(s: &ConfigSummary) -> String {
    let r = &s.first;
    let (class, stats) = match &s.edpois {
        Some(e) => {
            let Summary {
                min,
                max,
                mean,
                median,
                std_dev,
            } = e.summary();
            (
                e.color_class().name().to_string(),
                [min, max, mean, median, std_dev].map(|v| format!("{v}")).join(","),
            )
        }
        None => ("none".to_string(), ",,,,".to_string()),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.config_id,
        r.mutation,
        r.crossover,
        r.strategy,
        r.pop_size,
        r.scale_factor,
        r.crossover_rate,
        s.runs,
        s.failed,
        if s.complete { "yes" } else { "incomplete" },
        class,
        stats
    )
}

pub fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> CliResult {
    let table = load(&a.results)?;
    let summaries = summarize_table(&table, &a.filter, a.runs)?;
    let mut text = String::from(ANALYZE_HEADER);
    text.push('\n');
    for s in &summaries {
        text.push_str(&summary_line(s));
        text.push('\n');
    }
    match &a.out {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Builds the lattice panels for one family, failing on absent cells.
pub fn family_panels(
    table: &ResultsTable,
    filter: &FamilyFilter,
    f_grid: &[f64],
    cr_grid: &[f64],
) -> CliResult<Vec<Panel>> {
    let mut cells: BTreeMap<(usize, usize), Vec<(u64, f64)>> = BTreeMap::new();
    for row in table.rows.iter().filter(|r| filter_matches(filter, r)) {
        let (Some(fi), Some(ci)) = (
            svg::position(f_grid, row.scale_factor),
            svg::position(cr_grid, row.crossover_rate),
        ) else {
            continue;
        };
        if let Some(p) = row.pois() {
            cells.entry((fi, ci)).or_default().push((row.run_index, p));
        }
    }
    let missing: Vec<String> = f_grid
        .iter()
        .enumerate()
        .flat_map(|(fi, f)| cr_grid.iter().enumerate().map(move |(ci, cr)| (fi, ci, f, cr)))
        .filter(|(fi, ci, _, _)| !cells.contains_key(&(*fi, *ci)))
        .map(|(_, _, f, cr)| format!("(F={f}, Cr={cr})"))
        .collect();
    if !missing.is_empty() {
        return Err(CliError::data(format!(
            "results lack {} grid cells: {}",
            missing.len(),
            missing.join(", ")
        )));
    }
    cells
        .into_iter()
        .map(|((fi, ci), mut runs)| {
            runs.sort_by_key(|r| r.0);
            let e = Edpois::new(0, runs.into_iter().map(|r| r.1).collect())?;
            Ok(Panel {
                scale_factor: f_grid[fi],
                crossover_rate: cr_grid[ci],
                sorted_pois: e.sorted(),
                class: e.color_class(),
            })
        })
        .collect()
}

pub fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> CliResult {
    let table = load(&a.results)?;
    let f_grid = a.f_values.clone().unwrap_or_else(|| DEFAULT_F_VALUES.to_vec());
    let cr_grid = a.cr_values.clone().unwrap_or_else(|| DEFAULT_CR_VALUES.to_vec());
    let filter = FamilyFilter {
        mutation: Some(a.mutation),
        crossover: Some(a.crossover),
        strategy: Some(a.strategy),
        pop_size: Some(a.pop_size),
    };
    let panels = family_panels(&table, &filter, &f_grid, &cr_grid)?;
    let title = format!("DE/{}/{} {}, N={}", a.mutation, a.crossover, a.strategy, a.pop_size);
    let doc = svg::edpois_lattice(&title, &f_grid, &cr_grid, &panels);
    write_file(&a.out, &doc)?;
    writeln!(out, "wrote {} ({} panels)", a.out.display(), panels.len())?;
    Ok(())
}

pub fn cmd_tabulate(a: &TabulateArgs, out: &mut dyn Write) -> CliResult {
    let table = tabulate_pmax(&a.t_grid, &a.n_grid)?;
    let csv = table.to_csv();
    match &a.out {
        Some(p) => write_file(p, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(p) = &a.svg {
        write_file(p, &svg::pmax_chart(&table))?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}
