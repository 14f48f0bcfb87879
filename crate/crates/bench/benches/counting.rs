use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use degree_trees::counting::{count_forbidden_inclusion_exclusion, count_forbidden_series};
use degree_trees::{count_allowed_seq, guess_recurrence, oracle_count, BigInt, DegreeRule, DegreeSet, GuessOptions};

fn sequences(c: &mut Criterion) {
    let p: DegreeSet = "1,3,4,6,7".parse().unwrap();
    let mut group = c.benchmark_group("count_allowed_seq");
    group.sample_size(10);
    for terms in [100usize, 250, 500] {
        group.bench_with_input(BenchmarkId::from_parameter(terms), &terms, |b, &t| {
            b.iter(|| count_allowed_seq(black_box(&p), t).unwrap())
        });
    }
    group.finish();
}

fn forbidden_paths(c: &mut Criterion) {
    let f: DegreeSet = "2,3".parse().unwrap();
    let mut group = c.benchmark_group("count_forbidden_n120");
    group.bench_function("inclusion_exclusion", |b| {
        b.iter(|| count_forbidden_inclusion_exclusion(black_box(&f), 120).unwrap())
    });
    group.bench_function("series", |b| b.iter(|| count_forbidden_series(black_box(&f), 120).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let rule = DegreeRule::allowed([1, 3, 4]).unwrap();
    c.bench_function("oracle_count_n8", |b| b.iter(|| oracle_count(black_box(&rule), 8).unwrap()));
}

fn recurrence(c: &mut Criterion) {
    let seq: Vec<BigInt> =
        count_allowed_seq(&"1,3,4".parse().unwrap(), 111).unwrap().into_iter().map(BigInt::from).collect();
    let mut group = c.benchmark_group("guess_recurrence");
    group.sample_size(10);
    group.bench_function("P134_order4_degree8", |b| {
        b.iter(|| guess_recurrence(black_box(&seq), 2, GuessOptions::new(4, 8).verify(50)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sequences, forbidden_paths, oracle, recurrence);
criterion_main!(benches);
