use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use umbilic_core::complexpoly::{RootFinder, WeightedSymmetricProfile};
use umbilic_core::sweep::{generate, verify_batch, verify_batch_seq};
use umbilic_core::umbilic::VerifyOptions;

fn profiles(degree: usize, count: u64) -> Vec<WeightedSymmetricProfile> {
    generate(degree, count, 42, 0.05, &RootFinder::default())
        .expect("sampling")
        .into_iter()
        .map(|s| s.profile)
        .collect()
}

fn verify_par_vs_seq(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("verify_batch");
    group.sample_size(10);
    for degree in [3usize, 6, 8] {
        let batch = profiles(degree, 64);
        group.bench_with_input(BenchmarkId::new("parallel", degree), &batch, |b, ps| {
            b.iter(|| verify_batch(black_box(ps), &opts))
        });
        group.bench_with_input(BenchmarkId::new("sequential", degree), &batch, |b, ps| {
            b.iter(|| verify_batch_seq(black_box(ps), &opts))
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let finder = RootFinder::default();
    c.bench_function("generate_n6_x64", |b| {
        b.iter(|| generate(6, 64, black_box(7), 0.05, &finder))
    });
}

criterion_group!(benches, verify_par_vs_seq, sampling);
criterion_main!(benches);
