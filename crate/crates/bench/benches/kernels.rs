use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liftable_core::corpus::{entry, fields, TWO_CUSPS_GENERATORS};
use liftable_core::ksm::default_kmax;
use liftable_core::liftgen::verify_liftable;
use liftable_core::localalg::GermContext;
use liftable_core::JetOrder;

const GERMS: &[&str] = &["phi2", "two-cusps", "lips-type", "phi3", "large-corank-one"];

fn quotients(c: &mut Criterion) {
    let mut group = c.benchmark_group("quotient");
    for key in GERMS {
        let g = entry(key).unwrap().germ();
        group.bench_with_input(BenchmarkId::from_parameter(key), &g, |b, g| {
            b.iter(|| {
                let ctx = GermContext::new(g).unwrap();
                for j in 0..g.num_branches() {
                    black_box(ctx.quotient(j, 3).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn indices(c: &mut Criterion) {
    let mut group = c.benchmark_group("indices");
    group.sample_size(20);
    for key in GERMS {
        let g = entry(key).unwrap().germ();
        group.bench_with_input(BenchmarkId::from_parameter(key), &g, |b, g| {
            b.iter(|| {
                let ctx = GermContext::new(g).unwrap();
                black_box(ctx.min_generators(default_kmax(&ctx)).unwrap())
            })
        });
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_generators");
    group.sample_size(10);
    for (key, level) in [("phi2", 0), ("two-cusps", 1), ("lips-type", 1), ("large-corank-one", 1)] {
        let g = entry(key).unwrap().germ();
        group.bench_with_input(BenchmarkId::from_parameter(key), &g, |b, g| {
            b.iter(|| {
                let ctx = GermContext::new(g).unwrap();
                black_box(ctx.construct_generators(level, level as u32 + 3).unwrap())
            })
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let g = entry("two-cusps").unwrap().germ();
    let xs = fields(TWO_CUSPS_GENERATORS).unwrap();
    c.bench_function("verify_liftable/two-cusps/12", |b| {
        b.iter(|| {
            for xi in &xs {
                black_box(verify_liftable(&g, xi, JetOrder(12)).unwrap());
            }
        })
    });
}

criterion_group!(benches, quotients, indices, generators, verification);
criterion_main!(benches);
