use std::hint::black_box;

use coulomb_core::{
    phi_eval, poly_zeros_r, positive_zeros, r_poly, trace_zero, varphi_eval, Axis, CoulombParams, Target,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn evaluation(c: &mut Criterion) {
    let p = CoulombParams::new(0.2, 0.5).unwrap();
    let mut group = c.benchmark_group("phi");
    for x in [0.5, 5.0, 25.0, -45.0] {
        group.bench_with_input(BenchmarkId::from_parameter(x), &x, |b, &x| b.iter(|| phi_eval(&p, black_box(x))));
    }
    group.finish();
    let q = CoulombParams::new(-2.5, 1.0).unwrap();
    c.bench_function("varphi half-integer limit", |b| b.iter(|| varphi_eval(&q, black_box(7.5))));
}

fn zeros(c: &mut Criterion) {
    let p = CoulombParams::new(-1.0 / 3.0, -1.0 / 3.0).unwrap();
    c.bench_function("ten positive zeros", |b| b.iter(|| positive_zeros(black_box(&p), Target::Varphi, 10)));
    c.bench_function("first zero along eta", |b| b.iter(|| trace_zero(black_box(&p), Axis::Eta, (-3.0, 3.0), 34, 1)));
}

fn polynomials(c: &mut Criterion) {
    let p = CoulombParams::new(0.5, 2.0).unwrap();
    let mut group = c.benchmark_group("poly");
    for n in [10, 40] {
        group.bench_with_input(BenchmarkId::new("recurrence", n), &n, |b, &n| b.iter(|| r_poly(&p, black_box(n))));
        group.bench_with_input(BenchmarkId::new("zeros", n), &n, |b, &n| b.iter(|| poly_zeros_r(&p, black_box(n))));
    }
    group.finish();
}

criterion_group!(benches, evaluation, zeros, polynomials);
criterion_main!(benches);
