use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hyperform_core::numerics::{bessel_k, gamma, hurwitz_zeta_ladder, hyp1f2, zeta};
use hyperform_core::Complex64;

fn special_functions(c: &mut Criterion) {
    let s = Complex64::new(2.5, 0.75);
    c.bench_function("gamma", |b| b.iter(|| gamma(black_box(s))));
    c.bench_function("zeta", |b| b.iter(|| zeta(black_box(2.0 * s))));
    c.bench_function("bessel_k small argument", |b| b.iter(|| bessel_k(black_box(s + 0.5), black_box(0.8))));
    c.bench_function("bessel_k large argument", |b| b.iter(|| bessel_k(black_box(s + 0.5), black_box(40.0))));
    c.bench_function("hyp1f2", |b| {
        let (a, p, q) = (Complex64::new(0.25, 0.1), Complex64::new(-0.9, 0.2), Complex64::new(1.35, 0.0));
        b.iter(|| hyp1f2(black_box(a), p, q, black_box(Complex64::new(4.0, 0.0))))
    });
    c.bench_function("hurwitz ladder of 24", |b| b.iter(|| hurwitz_zeta_ladder(black_box(s * 2.0), 24, 0.37)));
}

criterion_group!(benches, special_functions);
criterion_main!(benches);
