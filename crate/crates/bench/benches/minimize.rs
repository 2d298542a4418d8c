use std::hint::black_box;
use std::time::Duration;

use acs_bench::{label, pairs, spectrum};
use acs_core::optimize::{exact_min_delta, refine_local, sample_min_delta};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_min_delta");
    for (g, m1, m2) in [(2, 5, 20), (3, 8, 8), (4, 4, 11), (4, 12, 17)] {
        let sp = spectrum(g, m1, m2);
        group.bench_function(label(g, m1, m2), |b| {
            b.iter(|| exact_min_delta(black_box(&sp)).unwrap().min_delta)
        });
    }
    group.finish();
}

fn sampled(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_min_delta");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(10));
    for (g, m1, m2) in [(2, 1, 9), (3, 4, 4), (4, 4, 11)] {
        let sp = spectrum(g, m1, m2);
        for n in [10_000, 100_000] {
            group.bench_with_input(BenchmarkId::new(label(g, m1, m2), n), &n, |b, &n| {
                b.iter(|| sample_min_delta(&sp, n, 42).unwrap().min_delta)
            });
        }
    }
    group.finish();
}

fn refine(c: &mut Criterion) {
    let sp = spectrum(4, 4, 11);
    let starts = pairs(&sp, 8, 5);
    c.bench_function("refine_local/g4_4_11", |b| {
        b.iter(|| {
            starts
                .iter()
                .map(|p| refine_local(&sp, black_box(p), 1e-9, 500).unwrap().x[0])
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, exact, sampled, refine);
criterion_main!(benches);
