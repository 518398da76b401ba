use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hyperform_core::{
    classical_direct, classical_fourier, e1_direct, e1_fourier, Complex64, TruncationPolicy, UnitTangentPoint,
};

fn series(c: &mut Criterion) {
    let policy = TruncationPolicy { c_max: 200, max_rel_tail: 1e-4, ..TruncationPolicy::default() };
    let p = UnitTangentPoint::new(Complex64::new(0.1, 1.2), 1.0).unwrap();
    let s = Complex64::new(2.5, 0.5);

    let mut group = c.benchmark_group("series");
    group.sample_size(20);
    group.bench_function("classical_direct c_max=200", |b| b.iter(|| classical_direct(black_box(p.z()), s, &policy)));
    group.bench_function("classical_fourier", |b| b.iter(|| classical_fourier(black_box(p.z()), s, &policy)));
    group.bench_function("e1_direct c_max=200", |b| b.iter(|| e1_direct(black_box(&p), s, &policy)));
    group.bench_function("e1_fourier", |b| b.iter(|| e1_fourier(black_box(&p), s, &policy)));
    group.finish();
}

criterion_group!(benches, series);
criterion_main!(benches);
