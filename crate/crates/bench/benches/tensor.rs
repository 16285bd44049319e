use cicy_bench::configurations;
use cicy_core::intersection::{intersection_tensor_oracle, intersection_tensor_with, Strategy};
use cicy_core::permanent::Method;
use cicy_core::{chern_data, gcd_invariants, intersection_tensor, Convention};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn tensors(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor");
    group.sample_size(20);
    for cfg in configurations() {
        let label = format!("{}-{}x{}", cfg.id(), cfg.m(), cfg.k());
        group.bench_with_input(BenchmarkId::new("grouped", &label), &cfg, |b, cfg| {
            b.iter(|| intersection_tensor_with(black_box(cfg), Strategy::Grouped).unwrap())
        });
        if cfg.m() <= 9 {
            group.bench_with_input(BenchmarkId::new("materialized-ryser", &label), &cfg, |b, cfg| {
                b.iter(|| intersection_tensor_with(black_box(cfg), Strategy::Materialized(Method::Ryser)).unwrap())
            });
        }
        if cfg.m() <= 6 {
            group.bench_with_input(BenchmarkId::new("coefficient-oracle", &label), &cfg, |b, cfg| {
                b.iter(|| intersection_tensor_oracle(black_box(cfg)).unwrap())
            });
        }
    }
    group.finish();
}

fn full_record(c: &mut Criterion) {
    let mut group = c.benchmark_group("record");
    group.sample_size(20);
    for cfg in configurations() {
        let label = format!("{}-{}x{}", cfg.id(), cfg.m(), cfg.k());
        group.bench_with_input(BenchmarkId::from_parameter(&label), &cfg, |b, cfg| {
            b.iter(|| {
                let t = intersection_tensor(black_box(cfg)).unwrap();
                let ch = chern_data(cfg, &t).unwrap();
                gcd_invariants(&t, &ch.c2_contracted, Convention::Literal).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, tensors, full_record);
criterion_main!(benches);
