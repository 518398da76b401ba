//! Elementary arithmetic: factorisation, divisor sums, Möbius and Euler φ.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest argument accepted by [`divisor_sigma`].
pub const MAX_SIGMA_ARG: i64 = 1_000_000_000;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Returns (g, x, y) with a·x + b·y = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Squarefree divisors e of n paired with μ(e), in increasing order of e.
pub fn squarefree_divisors(n: u64) -> Vec<(u64, i64)> {
    let mut out = vec![(1u64, 1i64)];
    for (p, _) in factorize(n) {
        let len = out.len();
        for i in 0..len {
            let (e, mu) = out[i];
            out.push((e * p, -mu));
        }
    }
    out.sort_unstable();
    out
}

/// σ_w(n) = Σ_{d|n} d^w.
pub fn divisor_sigma(n: i64, w: Complex64) -> Result<Complex64> {
    if n <= 0 {
        return Err(Error::domain(format!("divisor_sigma needs n >= 1, got {n}")));
    }
    if n > MAX_SIGMA_ARG {
        return Err(Error::domain(format!("divisor_sigma supports n <= {MAX_SIGMA_ARG}")));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for (p, e) in factorize(n as u64) {
        let pw = (w * (p as f64).ln()).exp();
        let mut term = Complex64::new(1.0, 0.0);
        let mut geo = Complex64::new(1.0, 0.0);
        for _ in 0..e {
            term *= pw;
            geo += term;
        }
        prod *= geo;
    }
    Ok(prod)
}
