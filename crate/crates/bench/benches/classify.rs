use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mpres_core::classify;
use mpres_core::corpus::{fixture, fixtures, random_affine_corpus};
use mpres_core::finspace::{random_metric, random_ultrametric, subdominant_ultrametric, transform_space, validate_metric, validate_ultrametric};
use mpres_core::search::find_m_violation;

fn bench_classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (name, f) in fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| b.iter(|| classify(black_box(f))));
    }
    let corpus = random_affine_corpus(20, 1000);
    g.bench_function("random affine x20", |b| {
        b.iter(|| corpus.iter().map(|f| classify(black_box(f)).in_m.is_proven() as usize).sum::<usize>())
    });
    g.finish();
}

fn bench_search(c: &mut Criterion) {
    let f = fixture("x_over_1px2");
    c.bench_function("random triangle search, 2000 draws", |b| b.iter(|| find_m_violation(black_box(&f), 2000, 0)));
}

fn bench_spaces(c: &mut Criterion) {
    let mut g = c.benchmark_group("spaces");
    let f = fixture("x_over_1px");
    for n in [4usize, 8, 12, 24] {
        let u = random_ultrametric(n, 7);
        let d = random_metric(n, 7);
        g.bench_with_input(BenchmarkId::new("validate ultrametric", n), &u, |b, u| b.iter(|| validate_ultrametric(black_box(u))));
        g.bench_with_input(BenchmarkId::new("validate metric", n), &d, |b, d| b.iter(|| validate_metric(black_box(d))));
        g.bench_with_input(BenchmarkId::new("transform", n), &d, |b, d| b.iter(|| transform_space(black_box(d), &f)));
        g.bench_with_input(BenchmarkId::new("subdominant", n), &d, |b, d| b.iter(|| subdominant_ultrametric(black_box(d))));
        g.bench_with_input(BenchmarkId::new("generate metric", n), &n, |b, &n| b.iter(|| random_metric(n, black_box(7))));
    }
    g.finish();
}

criterion_group!(benches, bench_classify, bench_search, bench_spaces);
criterion_main!(benches);
