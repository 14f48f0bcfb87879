use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use degree_trees::stats::{normality_diagnostics, DegreeMoments, JointMoments};

fn moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("central_moments_order6");
    for n in [250usize, 1000, 2000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| DegreeMoments::new(2, black_box(n), 6).unwrap().central(6))
        });
    }
    group.finish();

    c.bench_function("joint_moments_2x2_n1000", |b| {
        b.iter(|| JointMoments::new(2, 3, black_box(1000), 2, 2).unwrap().central(2, 2))
    });
}

fn diagnostics(c: &mut Criterion) {
    let mut group = c.benchmark_group("normality");
    group.sample_size(10);
    group.bench_function("X1_250_to_2000", |b| {
        b.iter(|| normality_diagnostics(1, black_box(&[250, 500, 1000, 2000])).unwrap())
    });
    group.finish();
}

criterion_group!(benches, moments, diagnostics);
criterion_main!(benches);
