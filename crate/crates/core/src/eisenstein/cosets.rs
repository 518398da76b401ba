//! Shell-by-shell summation over Γ_∞\SL(2,ℤ).
//!
//! For each c ≥ 1 the coprime d are summed directly inside the window
//! |cx + d| ≤ W·cy. Outside it the kernel is expanded binomially in (cy/u)²
//! and the two tails of every residue progression are summed in closed form
//! with Hurwitz zeta values (Möbius inversion over the squarefree e | c
//! enforces gcd(c, d) = 1). Shells beyond c_max contribute their zero mode,
//! whose average over c is taken from the mean value of φ(c)/c.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::SeriesResult;
use crate::error::{Error, Result};
use crate::modular::TruncationPolicy;
use crate::numerics::{
    factorize, hurwitz_zeta, hurwitz_zeta_ladder_scaled, squarefree_divisors, KahanSum,
};

/// Window half-width in units of cy.
pub(crate) const WINDOW: f64 = 4.0;
const MAX_LADDER: usize = 64;
const SIX_OVER_PI2: f64 = 6.0 / (PI * PI);

/// base · sgn(u)^odd · |u|^{−p0} · Σ_j betas[j] (v/|u|)^{2j}, the binomial
/// expansion of a kernel, valid for |u| ≥ W·v.
pub(crate) struct TailFamily {
    pub p0: Complex64,
    pub base: Complex64,
    pub betas: Vec<Complex64>,
    pub v: f64,
    pub odd: bool,
}

impl TailFamily {
    /// Σ_{m≥0} of the family at u = sign·(a + e m).
    fn progression(&self, a: f64, e: f64, sign: f64) -> Result<Complex64> {
        // Σ_m (a + em)^{−p} = a^{−p} · q^{p} ζ(p, q) with q = a/e
        let ladder = hurwitz_zeta_ladder_scaled(self.p0, self.betas.len(), a / e)?;
        let r2 = (self.v / a) * (self.v / a);
        let mut w = 1.0;
        let mut acc = KahanSum::new();
        for (beta, h) in self.betas.iter().zip(ladder) {
            acc.add(*beta * h * w);
            w *= r2;
        }
        let v = acc.value() * self.base * (-self.p0 * a.ln()).exp();
        Ok(if self.odd { v * sign } else { v })
    }
}

/// A Γ_∞-invariant summand g(cz + d) written through u = cx + d and v = cy.
pub(crate) trait CosetKernel: Sync {
    fn term(&self, u: f64, v: f64) -> Complex64;
    fn tail_families(&self, v: f64) -> Vec<TailFamily>;
    /// Shell c has zero mode (φ(c)/c) · amplitude · c^{−decay}.
    fn zero_mode(&self) -> Result<(Complex64, Complex64)>;
    /// Typical magnitude of the series, used as an absolute floor for the
    /// relative tail test.
    fn natural_scale(&self) -> f64;
}

/// Number of binomial terms so that |β_j| W^{−2j} < 1e−17 |β_0| for
/// β_j = binom(−σ, j).
pub(crate) fn ladder_length(sigma: Complex64) -> usize {
    let mut b = Complex64::new(1.0, 0.0);
    let w2 = WINDOW * WINDOW;
    let mut scale = 1.0;
    for j in 0..MAX_LADDER {
        if b.norm() * scale < 1e-17 && j > 0 {
            return j;
        }
        b *= (-sigma - j as f64) / (j as f64 + 1.0);
        scale /= w2;
    }
    MAX_LADDER
}

/// binom(−σ, j) for j < len.
pub(crate) fn neg_binomials(sigma: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len);
    let mut b = Complex64::new(1.0, 0.0);
    for j in 0..len {
        out.push(b);
        b *= (-sigma - j as f64) / (j as f64 + 1.0);
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Shell {
    value: Complex64,
    terms: u64,
    phi: u64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn shell<K: CosetKernel>(kernel: &K, c: i64, x: f64, y: f64) -> Result<Shell> {
    let v = c as f64 * y;
    let cx = c as f64 * x;
    let half = WINDOW * v;
    let lo = (-cx - half).floor() as i64;
    let hi = (-cx + half).ceil() as i64;
    let factors = factorize(c as u64);
    let primes: Vec<i64> = factors.iter().map(|&(p, _)| p as i64).collect();
    let phi = factors.iter().fold(c as u64, |acc, &(p, _)| acc / p * (p - 1));

    let mut acc = KahanSum::new();
    let mut terms = 0u64;
    for d in lo..=hi {
        if primes.iter().all(|&p| d % p != 0) {
            acc.add(kernel.term(cx + d as f64, v));
            terms += 1;
        }
    }

    let families = kernel.tail_families(v);
    for (e, mu) in squarefree_divisors(c as u64) {
        let e = e as i64;
        let ef = e as f64;
        let a_right = cx + (e * ceil_div(hi + 1, e)) as f64;
        let a_left = -(cx + (e * (lo - 1).div_euclid(e)) as f64);
        for (a, sign) in [(a_right, 1.0), (a_left, -1.0)] {
            for fam in &families {
                acc.add(fam.progression(a, ef, sign)? * mu as f64);
            }
        }
    }
    Ok(Shell { value: acc.value(), terms, phi })
}

/// Σ over all cosets of the kernel at the (already reduced) point x + iy.
pub(crate) fn coset_sum<K: CosetKernel>(
    kernel: &K,
    x: f64,
    y: f64,
    policy: &TruncationPolicy,
    what: &'static str,
) -> Result<SeriesResult> {
    policy.validate()?;
    let c_max = policy.c_max as i64;
    let shells: Vec<Result<Shell>> = (1..=c_max).into_par_iter().map(|c| shell(kernel, c, x, y)).collect();

    let mut acc = KahanSum::new();
    acc.add(kernel.term(1.0, 0.0));
    let mut terms = 1u64;
    let mut mean_dev = 0.0f64; // R(c) = Σ_{c'≤c} (φ(c')/c' − 6/π²)
    let mut max_dev = 0.0f64;
    let mut last = Shell { value: Complex64::new(0.0, 0.0), terms: 0, phi: 1 };
    for (i, sh) in shells.into_iter().enumerate() {
        let sh = sh?;
        let c = (i + 1) as i64;
        acc.add(sh.value);
        terms += sh.terms;
        mean_dev += sh.phi as f64 / c as f64 - SIX_OVER_PI2;
        if 2 * c > c_max {
            max_dev = max_dev.max(mean_dev.abs());
        }
        last = sh;
    }

    let (amplitude, decay) = kernel.zero_mode()?;
    let cf = c_max as f64;
    acc.add(amplitude * SIX_OVER_PI2 * hurwitz_zeta(decay, cf + 1.0)?);
    let value = acc.value();

    // Deviation of φ(c)/c from its mean, by partial summation, plus the
    // non-zero modes of the omitted shells bounded by those of the last one.
    let c_pow = cf.powf(-decay.re);
    let last_zero_mode = amplitude * (last.phi as f64 / cf) * (-decay * cf.ln()).exp();
    let estimate = amplitude.norm() * c_pow * (2.0 * max_dev + 1.0)
        + (last.value - last_zero_mode).norm() * cf / (decay.re - 1.0);

    let scale = value.norm().max(1e-8 * kernel.natural_scale());
    if !(estimate <= policy.max_rel_tail * scale) {
        return Err(Error::Convergence { what, best: value, estimate });
    }
    Ok(SeriesResult { value, tail_estimate: estimate, terms_used: terms })
}
