use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zrenyi::extremal::{min_entropy_over_extremes, DensityBound, Guard};
use zrenyi::families::poisson_binomial;
use zrenyi::verify::suite::random_pmf;
use zrenyi::{char_lq_norm, convolve, convolve_fft, renyi_entropy, RenyiOrder};

fn convolution(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("convolve");
    for n in [16usize, 128, 1024, 4096] {
        let f = random_pmf(&mut rng, n);
        let g = random_pmf(&mut rng, n);
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, _| {
            b.iter(|| convolve(black_box(&f), black_box(&g)))
        });
        group.bench_with_input(BenchmarkId::new("fft", n), &n, |b, _| {
            b.iter(|| convolve_fft(black_box(&f), black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn entropy(c: &mut Criterion) {
    let f = poisson_binomial(&vec![0.3; 2000]).unwrap();
    c.bench_function("renyi_entropy/pb2000/alpha2.5", |b| {
        b.iter(|| renyi_entropy(black_box(&f), RenyiOrder::Finite(2.5)))
    });
}

fn char_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_lq_norm");
    group.sample_size(20);
    for n in [10usize, 100] {
        let f = poisson_binomial(&vec![0.2; n]).unwrap();
        group.bench_with_input(BenchmarkId::new("q3", n), &n, |b, _| {
            b.iter(|| char_lq_norm(black_box(&f), 3.0, 1e-10).unwrap())
        });
    }
    group.finish();
}

fn extremes(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_over_extremes");
    group.sample_size(10);
    let cs: Vec<DensityBound> = ["2", "3/2", "5/2"].iter().map(|s| s.parse().unwrap()).collect();
    group.bench_function("three_factors_m5", |b| {
        b.iter(|| min_entropy_over_extremes(black_box(&cs), 5, RenyiOrder::Infinity, Guard::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, convolution, entropy, char_norm, extremes);
criterion_main!(benches);
