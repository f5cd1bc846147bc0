use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flateta_bench::{exceptional_samples, holonomy_samples};
use flateta_core::{
    build_holonomy, eta_invariant, eta_invariant_via_series, holonomy_checks, hurwitz_zeta,
    invariant_records, run_suite, structure_classes, Rational, Suite, SweepSpec,
};

fn eta_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("eta");
    for params in exceptional_samples() {
        let p = params.p.as_i64();
        group.bench_with_input(
            BenchmarkId::new("closed_form", &params),
            &params,
            |b, pr| {
                b.iter(|| {
                    (0..p)
                        .map(|ell| eta_invariant(pr, 2, ell).unwrap())
                        .collect::<Vec<_>>()
                })
            },
        );
        group.bench_with_input(BenchmarkId::new("via_series", &params), &params, |b, pr| {
            b.iter(|| {
                (0..p)
                    .map(|ell| eta_invariant_via_series(pr, 2, ell).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

fn records(c: &mut Criterion) {
    let params = flateta_core::validate(11, 2, 1, 2).unwrap();
    c.bench_function("invariant_records (11,2,1,2)", |b| {
        b.iter(|| {
            for class in structure_classes(&params).unwrap() {
                black_box(invariant_records(&params, &class.representative).unwrap());
            }
        })
    });
}

fn hurwitz(c: &mut Criterion) {
    let alpha = Rational::new(3, 26);
    c.bench_function("hurwitz_zeta s=4", |b| {
        b.iter(|| hurwitz_zeta(black_box(4.0), &alpha).unwrap())
    });
}

fn holonomy(c: &mut Criterion) {
    let mut group = c.benchmark_group("holonomy_checks");
    group.sample_size(20);
    for params in holonomy_samples() {
        let m = build_holonomy(&params).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&params), &params, |b, pr| {
            b.iter(|| holonomy_checks(&m, pr))
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    let sweep = SweepSpec::new(7, 30);
    for suite in [Suite::Integrality, Suite::Dimker] {
        group.bench_function(suite.name(), |b| b.iter(|| run_suite(suite, &sweep)));
    }
    group.finish();
}

criterion_group!(benches, eta_paths, records, hurwitz, holonomy, sweeps);
criterion_main!(benches);
