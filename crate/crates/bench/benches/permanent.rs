use cicy_bench::dense_matrix;
use cicy_core::permanent::{permanent_expansion, permanent_ryser};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn permanents(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent");
    for n in [6, 10, 14, 18] {
        let m = dense_matrix(n, 3, n as u64);
        group.bench_with_input(BenchmarkId::new("ryser", n), &m, |b, m| {
            b.iter(|| permanent_ryser(black_box(m)).unwrap())
        });
        if n <= 14 {
            group.bench_with_input(BenchmarkId::new("expansion", n), &m, |b, m| {
                b.iter(|| permanent_expansion(black_box(m)).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, permanents);
criterion_main!(benches);
