//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pois_core::analysis::{classify, monte_carlo_infeasibility, p_max, prob_infeasible, Edpois};
use pois_core::boundary::{correct, cotn, mirror, saturate, toroidal};
use pois_core::engine::{binomial_mask, exponential_mask, run_de_observed, Observer};
use pois_core::runner::{execute, ExecuteOptions, GridSpec, ResultsTable, DEFAULT_F_VALUES};
use pois_core::{
    Crossover, DeConfig, Domain, Mutation, Objective, ObjectiveKind, ParentFitness, Population, RngStream, Strategy,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

fn sweep(
    pop_sizes: &[usize],
    f_values: &[f64],
    cr_values: &[f64],
    crossovers: &[Crossover],
    strategy: Strategy,
    budget_per_dimension: u64,
    master_seed: u64,
) -> ResultsTable {
    let grid = GridSpec {
        pop_sizes: pop_sizes.to_vec(),
        cr_values: cr_values.to_vec(),
        f_values: f_values.to_vec(),
        mutations: vec![Mutation::Rand1],
        crossovers: crossovers.to_vec(),
        strategies: vec![strategy],
        n: 30,
        budget_per_dimension,
        runs_per_config: 15,
        master_seed,
        objective: ObjectiveKind::F0,
        parent_fitness: ParentFitness::Redraw,
    };
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let ex = execute(
        &grid,
        &ExecuteOptions {
            parallelism: threads,
            ..ExecuteOptions::default()
        },
    )
    .expect("sweep");
    assert!(ex.failures.is_empty() && ex.is_complete());
    ex.table
}

fn pois_where(table: &ResultsTable, keep: impl Fn(&pois_core::runner::ResultRow) -> bool) -> Vec<f64> {
    table
        .rows
        .iter()
        .filter(|r| keep(r))
        .map(|r| r.pois().unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let v = p_max(0.01, 500).map_err(|e| e.to_string())?;
    let three_sig = format!("{v:.2e}");
    let mut worst = 0.0f64;
    for t in [0.01, 0.1, 0.5] {
        for n in [1, 30, 500] {
            let back = prob_infeasible(p_max(t, n).unwrap(), n).unwrap();
            worst = worst.max((back - t).abs() / t);
        }
    }
    check(
        three_sig == "2.01e-5" && worst < 1e-12,
        format!("p_max(0.01, 500) = {v:.6e} (3 s.f. {three_sig}), worst round-trip relative error {worst:.2e}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = RngStream::new(2024);
    let mut details = Vec::new();
    let mut ok = true;
    for (p, n) in [(0.1, 10), (0.001, 30), (0.0000201, 500)] {
        let f = prob_infeasible(p, n).unwrap();
        let emp = monte_carlo_infeasibility(p, n, 100_000, &mut rng).unwrap();
        let tol = 3.0 * (f * (1.0 - f) / 1e5).sqrt();
        ok &= (emp - f).abs() < tol;
        details.push(format!("({p},{n}): |{emp:.5} - {f:.5}| vs {tol:.5}"));
    }
    check(ok, details.join("; "))
}

fn criterion_3() -> Outcome {
    let table = sweep(
        &[5],
        &[0.05],
        &[0.05],
        &[Crossover::Bin],
        Strategy::Saturation,
        1_000,
        3,
    );
    let values = pois_where(&table, |_| true);
    let passing = values.iter().filter(|&&v| v < 0.001).count();
    let max = values.iter().cloned().fold(0.0, f64::max);
    check(
        passing == values.len(),
        format!("{passing}/{} runs below 0.001, max POIS {max:.5}", values.len()),
    )
}

fn criterion_3_long_budget() -> String {
    let table = sweep(
        &[5],
        &[0.05],
        &[0.05],
        &[Crossover::Bin],
        Strategy::Saturation,
        10_000,
        3,
    );
    let values = pois_where(&table, |_| true);
    let passing = values.iter().filter(|&&v| v < 0.001).count();
    let max = values.iter().cloned().fold(0.0, f64::max);
    format!(
        "same configuration at budget 3e5: {passing}/{} runs below 0.001, max POIS {max:.6}",
        values.len()
    )
}

fn criterion_4() -> Outcome {
    let table = sweep(
        &[100],
        &[1.566],
        &[0.99],
        &[Crossover::Bin],
        Strategy::Saturation,
        1_000,
        4,
    );
    let m = median(&pois_where(&table, |_| true));
    check(m > 0.9, format!("median POIS {m:.4}"))
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

fn criterion_5() -> Outcome {
    let table = sweep(
        &[20],
        &DEFAULT_F_VALUES,
        &[0.52],
        &[Crossover::Bin],
        Strategy::Toroidal,
        1_000,
        5,
    );
    let medians: Vec<f64> = DEFAULT_F_VALUES
        .iter()
        .map(|&f| median(&pois_where(&table, |r| r.scale_factor == f)))
        .collect();
    let rho = pearson(&ranks(&DEFAULT_F_VALUES), &ranks(&medians));
    let shown: Vec<String> = medians.iter().map(|m| format!("{m:.4}")).collect();
    check(
        rho > 0.9,
        format!("Spearman rho {rho:.4}; medians by F [{}]", shown.join(", ")),
    )
}

fn criterion_6() -> Outcome {
    let crs = [0.285, 0.52, 0.755];
    let table = sweep(&[5], &[0.7], &crs, &Crossover::ALL, Strategy::Toroidal, 1_000, 6);
    let mut ok = true;
    let mut details = Vec::new();
    for cr in crs {
        let exp = median(&pois_where(&table, |r| {
            r.crossover == Crossover::Exp && r.crossover_rate == cr
        }));
        let bin = median(&pois_where(&table, |r| {
            r.crossover == Crossover::Bin && r.crossover_rate == cr
        }));
        ok &= exp <= bin;
        details.push(format!("Cr={cr}: exp {exp:.4} vs bin {bin:.4}"));
    }
    check(ok, details.join("; "))
}

fn criterion_7() -> Outcome {
    let n = 4;
    let mut pmf = [0.0f64; 5];
    for forced in 0..n {
        for pattern in 0u32..(1 << n) {
            let count = (0..n).filter(|&j| j == forced || pattern & (1 << j) != 0).count();
            pmf[count] += 1.0 / (n as f64 * 16.0);
        }
    }
    let samples = 100_000;
    let mut rng = RngStream::new(7);
    let mut observed = [0u64; 5];
    for _ in 0..samples {
        observed[binomial_mask(n, 0.5, &mut rng).iter().filter(|&&m| m).count()] += 1;
    }
    let stat: f64 = (1..=n)
        .map(|k| {
            let e = pmf[k] * samples as f64;
            (observed[k] as f64 - e).powi(2) / e
        })
        .sum();
    let p = 1.0 - ChiSquared::new((n - 1) as f64).unwrap().cdf(stat);

    let total: usize = (0..samples)
        .map(|_| exponential_mask(3, 0.5, &mut rng).iter().filter(|&&m| m).count())
        .sum();
    let mean = total as f64 / samples as f64;
    check(
        p > 0.001 && observed[0] == 0 && (mean - 1.75).abs() < 0.02,
        format!("binomial chi-square {stat:.3} (p = {p:.4}); exponential mean block {mean:.4}"),
    )
}

fn iterate_toroidal(mut x: f64, a: f64, b: f64) -> f64 {
    while x > b {
        x -= b - a;
    }
    while x < a {
        x += b - a;
    }
    x
}

fn iterate_mirror(mut x: f64, a: f64, b: f64) -> f64 {
    while !(a..=b).contains(&x) {
        x = if x > b { 2.0 * b - x } else { 2.0 * a - x };
    }
    x
}

struct Watch {
    domain: Domain,
    violations: usize,
}

impl Observer for Watch {
    fn generation(&mut self, _: u64, population: &Population) {
        self.violations += population
            .members()
            .iter()
            .filter(|m| !self.domain.contains(&m.coords).unwrap())
            .count();
    }
}

fn criterion_8() -> Outcome {
    let mut rng = RngStream::new(8);
    let mut failures = Vec::new();
    for case in 0..10_000 {
        let dim = 1 + rng.index(6);
        let lower: Vec<f64> = (0..dim).map(|_| rng.uniform_in(-5.0, 5.0)).collect();
        let upper: Vec<f64> = lower.iter().map(|a| a + rng.uniform_in(0.1, 4.0)).collect();
        let d = Domain::new(lower.clone(), upper.clone()).unwrap();
        let point: Vec<f64> = (0..dim)
            .map(|i| lower[i] + rng.uniform_in(-10.0, 11.0) * (upper[i] - lower[i]))
            .collect();
        let inside: Vec<f64> = (0..dim).map(|i| rng.uniform_in(lower[i], upper[i])).collect();
        let s = saturate(&point, &d);
        let t = toroidal(&point, &d);
        let m = mirror(&point, &d);
        for (name, out) in [("saturation", &s), ("toroidal", &t), ("mirror", &m)] {
            if !d.contains(out).unwrap() {
                failures.push(format!("case {case}: {name} infeasible"));
            }
        }
        if saturate(&s, &d) != s || toroidal(&t, &d) != t || mirror(&m, &d) != m {
            failures.push(format!("case {case}: not idempotent"));
        }
        if saturate(&inside, &d) != inside || toroidal(&inside, &d) != inside || mirror(&inside, &d) != inside {
            failures.push(format!("case {case}: feasible input changed"));
        }
        for i in 0..dim {
            let (a, b) = (lower[i], upper[i]);
            let tol = 1e-9 * (b - a).max(1.0);
            let to = iterate_toroidal(point[i], a, b);
            let torus_ok = (t[i] - to).abs() < tol || ((t[i] - to).abs() - (b - a)).abs() < tol;
            if s[i] != point[i].clamp(a, b) || !torus_ok || (m[i] - iterate_mirror(point[i], a, b)).abs() > tol {
                failures.push(format!("case {case} coord {i}: differs from iterated oracle"));
            }
        }
    }

    let unit = Domain::unit(1).unwrap();
    let mut lows: Vec<f64> = (0..100_000).map(|_| cotn(&[-0.25], &unit, &mut rng)[0]).collect();
    if lows.iter().any(|v| !(0.0..=1.0).contains(v)) {
        failures.push("cotn output infeasible".into());
    }
    lows.sort_by(f64::total_cmp);
    let cotn_median = (lows[49_999] + lows[50_000]) / 2.0;
    if (cotn_median - 0.2249).abs() >= 0.01 {
        failures.push(format!("cotn median {cotn_median:.4}"));
    }
    let boxed = Domain::new(vec![-3.0, 2.0], vec![1.0, 2.5]).unwrap();
    for _ in 0..1_000 {
        let out = correct(Strategy::Cotn, &[-40.0, 9.0], &boxed, &mut rng).unwrap();
        if !boxed.contains(&out.corrected).unwrap() {
            failures.push("cotn infeasible on a general box".into());
        }
    }

    let d = Domain::unit(30).unwrap();
    let obj = Objective::new(ObjectiveKind::F0, d.clone());
    let cfg = DeConfig {
        pop_size: 20,
        scale_factor: 1.566,
        crossover_rate: 0.99,
        mutation: Mutation::Rand1,
        crossover: Crossover::Bin,
        strategy: Strategy::Penalty,
        budget: 30_000,
        parent_fitness: ParentFitness::Redraw,
    };
    let mut watch = Watch {
        domain: d.clone(),
        violations: 0,
    };
    let rec = run_de_observed(&cfg, &d, &obj, &mut RngStream::new(88), &mut watch).unwrap();
    if watch.violations > 0 {
        failures.push(format!("penalty admitted {} infeasible members", watch.violations));
    }
    let summary = format!(
        "10^4 random boxes checked; COTN lower median {cotn_median:.4}; penalty run POIS {:.3} with {} infeasible members",
        rec.pois, watch.violations
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; {} problems, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn criterion_9() -> Outcome {
    let d = Domain::unit(30).unwrap();
    let obj = Objective::new(ObjectiveKind::F0, d.clone());
    let mut rng = RngStream::new(9);
    let n = 10_000;
    let point = vec![0.5; 30];
    let mut draws: Vec<f64> = (0..n).map(|_| obj.evaluate(&point, &mut rng).unwrap()).collect();

    let mean = draws.iter().sum::<f64>() / n as f64;
    let var: f64 = draws.iter().map(|x| (x - mean).powi(2)).sum();
    let lag: f64 = draws.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    let autocorr = lag / var;

    draws.sort_by(f64::total_cmp);
    let ks = draws
        .iter()
        .enumerate()
        .map(|(i, &x)| ((i + 1) as f64 / n as f64 - x).max(x - i as f64 / n as f64))
        .fold(0.0, f64::max);
    let critical = 1.6276 / (n as f64).sqrt();
    check(
        ks < critical && autocorr.abs() < 0.05,
        format!("KS D = {ks:.5} (1% critical {critical:.5}); lag-1 autocorrelation {autocorr:.5}"),
    )
}

fn criterion_10() -> Outcome {
    let grid = GridSpec {
        pop_sizes: vec![5, 20],
        cr_values: vec![0.05, 0.99],
        f_values: vec![0.05, 0.483, 0.916, 1.566, 2.0],
        mutations: vec![Mutation::Rand1],
        crossovers: vec![Crossover::Bin],
        strategies: vec![Strategy::Toroidal],
        n: 10,
        budget_per_dimension: 1_000,
        runs_per_config: 5,
        master_seed: 10,
        objective: ObjectiveKind::F0,
        parent_fitness: ParentFitness::Redraw,
    };
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, parallelism: usize, max_new_runs: Option<usize>| {
        let path = dir.path().join(name);
        execute(
            &grid,
            &ExecuteOptions {
                parallelism,
                checkpoint: Some(path.clone()),
                max_new_runs,
            },
        )
        .unwrap();
        path
    };
    let serial = run("serial.csv", 1, None);
    let parallel = run("parallel.csv", 8, None);
    let resumed = run("resumed.csv", 4, Some(37));
    let partial_rows = fs::read_to_string(&resumed).unwrap().lines().count() - 1;
    let mut torn = fs::OpenOptions::new().append(true).open(&resumed).unwrap();
    std::io::Write::write_all(&mut torn, b"19,rand/1,bin,toroidal,20,2.0").unwrap();
    drop(torn);
    run("resumed.csv", 8, None);

    let a = fs::read(&serial).unwrap();
    let rows = String::from_utf8_lossy(&a).lines().count() - 1;
    check(
        rows == 100 && a == fs::read(&parallel).unwrap() && a == fs::read(&resumed).unwrap(),
        format!("20 configs x 5 runs = {rows} rows; interrupted after {partial_rows}; serial, 8-thread and resumed files identical"),
    )
}

fn criterion_11() -> Outcome {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let csv = fixtures.join("family.csv");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plot.svg");
    let status = Command::new(env!("CARGO_BIN_EXE_pois"))
        .args([
            "plot",
            csv.to_str().unwrap(),
            "--mutation",
            "rand/1",
            "--crossover",
            "bin",
        ])
        .args([
            "--strategy",
            "saturation",
            "--pop-size",
            "5",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap()
        .status;
    if !status.success() {
        return Err(format!("plot exited with {status}"));
    }
    let svg = fs::read_to_string(&out).unwrap();
    let golden = fs::read_to_string(fixtures.join("family.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).map_err(|e| format!("invalid XML: {e}"))?;
    let external = svg.contains("href") || svg.contains("url(") || svg.matches("http").count() > 1;

    let table = ResultsTable::from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    let mut mismatched = 0;
    let mut cells = std::collections::BTreeSet::new();
    let panels: Vec<_> = doc
        .descendants()
        .filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("panel ")))
        .collect();
    for p in &panels {
        let f: f64 = p.attribute("data-f").unwrap().parse().unwrap();
        let cr: f64 = p.attribute("data-cr").unwrap().parse().unwrap();
        cells.insert((p.attribute("data-f").unwrap(), p.attribute("data-cr").unwrap()));
        let values = pois_where(&table, |r| {
            r.crossover == Crossover::Bin && (r.scale_factor - f).abs() < 1e-9 && (r.crossover_rate - cr).abs() < 1e-9
        });
        let expected = classify(&values).unwrap();
        let sorted = Edpois::new(0, values).unwrap().sorted();
        let drawn = p.attribute("class").unwrap().trim_start_matches("panel ");
        let bars = p
            .children()
            .filter(|c| c.attribute("fill") == Some(expected.hex()))
            .count();
        if drawn != expected.name() || bars != sorted.len() {
            mismatched += 1;
        }
    }
    check(
        svg == golden && !external && panels.len() == 50 && cells.len() == 50 && mismatched == 0,
        format!(
            "{} panels at {} distinct (F, Cr) cells, {mismatched} class mismatches, golden match {}, self-contained {}",
            panels.len(),
            cells.len(),
            svg == golden,
            !external
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("probability model exactness", criterion_1),
        ("Monte Carlo vs closed form", criterion_2),
        ("zero-POIS floor at minimal parameters", criterion_3),
        ("saturation at aggressive settings", criterion_4),
        ("monotone F-trend (bin)", criterion_5),
        ("exp <= bin", criterion_6),
        ("crossover distribution oracles", criterion_7),
        ("correction property suite", criterion_8),
        ("f0 statistical contract", criterion_9),
        ("determinism and resumability", criterion_10),
        ("rendering", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] criterion {:>2} {name}: {detail} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        if i == 2 {
            println!("[INFO] criterion  3 supplementary: {}", criterion_3_long_budget());
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
