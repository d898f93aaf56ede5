use std::hint::black_box;

use clutterkit::generators::{affine_plane, fano};
use clutterkit::solution::condition_b;
use clutterkit::{blocker, build_ic, fpn, is_ideal, vertices};
use clutterkit_bench::{odd_cycle, q6};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn blockers(c: &mut Criterion) {
    let mut g = c.benchmark_group("blocker");
    for k in [3, 5, 7] {
        let cycle = odd_cycle(k);
        g.bench_with_input(BenchmarkId::new("odd_cycle", 2 * k + 1), &cycle, |b, x| {
            b.iter(|| blocker(black_box(x)))
        });
    }
    let ag3 = affine_plane(3).unwrap();
    g.bench_function("ag3", |b| b.iter(|| blocker(black_box(&ag3))));
    g.finish();
}

fn packing_lp(c: &mut Criterion) {
    let ag3 = affine_plane(3).unwrap();
    let fano = fano();
    c.bench_function("fpn/fano", |b| b.iter(|| fpn(black_box(&fano))));
    c.bench_function("fpn/ag3", |b| b.iter(|| fpn(black_box(&ag3))));
}

fn polytopes(c: &mut Criterion) {
    let ag3 = affine_plane(3).unwrap();
    let ic = build_ic(&ag3).unwrap();
    c.bench_function("vertices/I(ag3)", |b| b.iter(|| vertices(black_box(&ic))));
    let q = q6();
    c.bench_function("ideal/q6", |b| b.iter(|| is_ideal(black_box(&q))));
    let cycle = odd_cycle(3);
    c.bench_function("ideal/c7", |b| b.iter(|| is_ideal(black_box(&cycle))));
}

fn minor_sweep(c: &mut Criterion) {
    let q = q6();
    c.bench_function("condition_b/q6", |b| {
        b.iter(|| condition_b(black_box(&q), black_box(&q)))
    });
    let cycle = odd_cycle(4);
    c.bench_function("condition_b/c9", |b| {
        b.iter(|| condition_b(black_box(&cycle), black_box(&cycle)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = blockers, packing_lp, polytopes, minor_sweep
}
criterion_main!(benches);
