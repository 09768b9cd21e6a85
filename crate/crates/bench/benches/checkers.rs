use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fibcat_core::catalog;
use fibcat_core::constructions::arrow_category;
use fibcat_core::corr::{compose_prof, idem_ret_bimodules};
use fibcat_core::fib::classify;
use fibcat_core::gen::Gen;
use fibcat_core::homology::{homology, is_final};
use fibcat_core::FinalityMode;

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for n in [2, 3] {
        let ev_t = arrow_category(&Arc::new(catalog::interval(n))).ev_t;
        group.bench_with_input(BenchmarkId::new("ev_t_arrow", n), &ev_t, |b, f| {
            b.iter(|| classify(black_box(f), None))
        });
    }
    let random = Gen::new(7).over_interval(2, 12);
    group.bench_function("random_over_interval_2", |b| {
        b.iter(|| classify(black_box(&random), None))
    });
    group.finish();
}

fn bench_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    group.bench_function("z2_dim_4", |b| {
        let z2 = catalog::cyclic_group(2);
        b.iter(|| homology(black_box(&z2), 4))
    });
    group.bench_function("interval_5_dim_3", |b| {
        let i5 = catalog::interval(5);
        b.iter(|| homology(black_box(&i5), 3))
    });
    group.finish();
}

fn bench_compose(c: &mut Criterion) {
    let (p, q) = idem_ret_bimodules();
    c.bench_function("compose_prof/idem_ret", |b| {
        b.iter(|| compose_prof(black_box(&p), black_box(&q)))
    });
}

fn bench_finality(c: &mut Criterion) {
    let ev_t = arrow_category(&Arc::new(catalog::interval(2))).ev_t;
    let mut group = c.benchmark_group("is_final");
    group.bench_function("pi0_exact", |b| {
        b.iter(|| is_final(black_box(&ev_t), FinalityMode::Pi0Exact))
    });
    group.bench_function("certified_2", |b| {
        b.iter(|| is_final(black_box(&ev_t), FinalityMode::Certified(2)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_classify,
    bench_homology,
    bench_compose,
    bench_finality
);
criterion_main!(benches);
