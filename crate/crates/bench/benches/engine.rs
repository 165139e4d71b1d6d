use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use pois_bench::{heavy_config, overshooting_points};
use pois_core::analysis::{p_max, prob_infeasible};
use pois_core::boundary::correct;
use pois_core::engine::{binomial_mask, exponential_mask};
use pois_core::{run_de, Domain, Objective, ObjectiveKind, RngStream, Strategy};

fn bench_run(c: &mut Criterion) {
    let domain = Domain::unit(30).unwrap();
    let objective = Objective::new(ObjectiveKind::F0, domain.clone());
    let config = heavy_config(30_000);
    c.bench_function("run_de rand/2/bin cotn N=100 budget=3e4", |b| {
        b.iter_batched(
            || RngStream::new(7),
            |mut rng| run_de(&config, &domain, &objective, &mut rng).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_corrections(c: &mut Criterion) {
    let domain = Domain::unit(30).unwrap();
    let points = overshooting_points(256, 30);
    let mut group = c.benchmark_group("correct");
    for strategy in Strategy::ALL {
        group.bench_function(strategy.name(), |b| {
            let mut rng = RngStream::new(1);
            b.iter(|| {
                for p in &points {
                    black_box(correct(strategy, p, &domain, &mut rng).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_crossover(c: &mut Criterion) {
    let mut rng = RngStream::new(3);
    c.bench_function("binomial_mask n=30", |b| b.iter(|| binomial_mask(30, 0.52, &mut rng)));
    c.bench_function("exponential_mask n=30", |b| {
        b.iter(|| exponential_mask(30, 0.52, &mut rng))
    });
}

fn bench_model(c: &mut Criterion) {
    c.bench_function("p_max round trip", |b| {
        b.iter(|| prob_infeasible(p_max(black_box(0.01), 500).unwrap(), 500).unwrap())
    });
}

criterion_group!(benches, bench_run, bench_corrections, bench_crossover, bench_model);
criterion_main!(benches);
