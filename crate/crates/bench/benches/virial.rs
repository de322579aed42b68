use std::time::Duration;

use bosegas_bench::virial_table;
use bosegas_core::Backend;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn exact_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("virial_exact");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for order in [8usize, 12, 20] {
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &k| {
            b.iter(|| virial_table(k, Backend::Exact))
        });
    }
    g.finish();
}

fn decimal_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("virial_decimal50");
    g.sample_size(10);
    for order in [8usize, 12, 20] {
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &k| {
            b.iter(|| virial_table(k, Backend::Decimal { digits: 50 }))
        });
    }
    g.finish();
}

criterion_group!(benches, exact_tables, decimal_tables);
criterion_main!(benches);
