//! Riemann zeta via Borwein's accelerated alternating series for η(s).

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const BORWEIN_N: usize = 60;

/// (d_k − d_n)/d_n for k < n, with d_k the Borwein partial sums.
fn weights() -> &'static [f64; BORWEIN_N] {
    static W: OnceLock<[f64; BORWEIN_N]> = OnceLock::new();
    W.get_or_init(|| {
        let n = BORWEIN_N as f64;
        let mut d = [0.0f64; BORWEIN_N + 1];
        let mut term = 1.0 / n;
        let mut acc = term;
        d[0] = n * acc;
        for i in 0..BORWEIN_N {
            let fi = i as f64;
            term *= 4.0 * (n + fi) * (n - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
            acc += term;
            d[i + 1] = n * acc;
        }
        let dn = d[BORWEIN_N];
        let mut w = [0.0; BORWEIN_N];
        for k in 0..BORWEIN_N {
            w[k] = (d[k] - dn) / dn;
        }
        w
    })
}

/// Dirichlet eta η(s) = Σ (−1)^{k}(k+1)^{−s}, entire.
pub fn eta(s: Complex64) -> Complex64 {
    let w = weights();
    let mut acc = super::KahanSum::new();
    for (k, &wk) in w.iter().enumerate() {
        let base = ((k + 1) as f64).ln();
        let term = (-s * base).exp() * wk;
        acc.add(if k % 2 == 0 { -term } else { term });
    }
    acc.value()
}

/// ζ(s) for Re s > −2.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if (s - one).norm() < 1e-15 {
        return Err(Error::Pole { function: "zeta", at: s });
    }
    if s.re > 40.0 {
        // η-denominator is 1 to working precision; sum directly.
        let mut acc = one;
        for k in 2..6u32 {
            acc += (-s * (k as f64).ln()).exp();
        }
        return Ok(acc);
    }
    let denom = one - (std::f64::consts::LN_2 * (one - s)).exp();
    if denom.norm() < 1e-10 {
        return Err(Error::domain(format!(
            "zeta({s}) lies on a zero of 1 - 2^(1-s); use the η form"
        )));
    }
    Ok(eta(s) / denom)
}

/// Real-argument convenience wrapper.
pub fn zeta_real(x: f64) -> Result<f64> {
    zeta(Complex64::new(x, 0.0)).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn even_values() {
        assert!((zeta_real(2.0).unwrap() * 6.0 / (PI * PI) - 1.0).abs() < 1e-14);
        assert!((zeta_real(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn reference_complex_value() {
        let want = c(0.973_041_960_418_942_4, -0.147_695_593_000_453_8);
        let got = zeta(c(3.0, 2.0)).unwrap();
        assert!((got - want).norm() / want.norm() < 1e-13);
    }

    #[test]
    fn left_of_critical_strip() {
        // ζ(−1) = −1/12, ζ(0) = −1/2, ζ(−2) = 0.
        assert!((zeta_real(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-13);
        assert!((zeta_real(0.0).unwrap() + 0.5).abs() < 1e-14);
        let z = zeta_real(-2.0).unwrap();
        assert!(z.abs() < 1e-12, "{z:e}");
    }

    #[test]
    fn strip_reference_values() {
        let cases = [
            (c(-1.5, 0.0), c(-0.025_485_201_889_833_036, 0.0)),
            (c(-1.5, 3.0), c(0.201_328_830_542_150_34, 0.097_149_743_015_620_04)),
            (c(0.5, 9.0), c(1.447_642_451_933_755_8, 0.191_803_012_762_665_4)),
        ];
        for (s, want) in cases {
            let got = zeta(s).unwrap();
            assert!((got - want).norm() / want.norm() < 1e-10, "s={s}: {got}");
        }
    }

    #[test]
    fn pole() {
        assert!(matches!(zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(zeta(c(1.0 + 1e-9, 0.0)).unwrap().re > 1e8);
    }

    #[test]
    fn large_real_part_branch_is_continuous() {
        let a = zeta(c(40.0, 0.5)).unwrap();
        let b = zeta(c(40.000_001, 0.5)).unwrap();
        assert!((a - b).norm() < 1e-15);
    }
}
