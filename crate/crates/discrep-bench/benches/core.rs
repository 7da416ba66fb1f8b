use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use discrep_core::constants::{self, VariantTag};
use discrep_core::covers::{build_cover_anchored, validate_cover};
use discrep_core::discrepancy::{
    discrepancy_lower_bound, extreme_discrepancy_exact, star_discrepancy_exact, DiscrepancyKind,
};
use discrep_core::MatrixSource;

fn bench_star_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_exact");
    for (n, s) in [(64usize, 2usize), (256, 2), (16, 4)] {
        let points = MatrixSource::new(0).prefix(n, s).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_s{s}")),
            &points,
            |b, p| b.iter(|| star_discrepancy_exact(black_box(p)).unwrap()),
        );
    }
    group.finish();
}

fn bench_extreme_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("extreme_exact");
    for (n, s) in [(32usize, 2usize), (64, 2)] {
        let points = MatrixSource::new(0).prefix(n, s).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_s{s}")),
            &points,
            |b, p| b.iter(|| extreme_discrepancy_exact(black_box(p)).unwrap()),
        );
    }
    group.finish();
}

fn bench_lower_bound(c: &mut Criterion) {
    let points = MatrixSource::new(0).prefix(512, 8).unwrap();
    c.bench_function("lower_bound_n512_s8_t1000", |b| {
        b.iter(|| {
            discrepancy_lower_bound(black_box(&points), DiscrepancyKind::Star, 1000, 7).unwrap()
        })
    });
}

fn bench_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("big_a");
    for s in [1u32, 100, 10_000] {
        group.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, &s| {
            b.iter(|| constants::big_a(VariantTag::Extreme, black_box(s), 1e-6).unwrap())
        });
    }
    group.finish();
    c.bench_function("zeta_1_73", |b| {
        b.iter(|| constants::zeta(black_box(1.73)).unwrap())
    });
    c.bench_function("zeta_inv_2", |b| {
        b.iter(|| constants::zeta_inv(black_box(2.0)).unwrap())
    });
}

fn bench_covers(c: &mut Criterion) {
    let cover = build_cover_anchored(0.1, 3).unwrap();
    c.bench_function("validate_cover_d0.1_s3_1000", |b| {
        b.iter(|| validate_cover(black_box(&cover), 1000, 0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_star_exact,
    bench_extreme_exact,
    bench_lower_bound,
    bench_constants,
    bench_covers
);
criterion_main!(benches);
