//! Hurwitz zeta ζ(p, q) = Σ_{k≥0} (q+k)^{−p} for Re p > 1, q > 0, by
//! Euler–Maclaurin with a shifted head.

use num_complex::Complex64;

use super::KahanSum;
use crate::error::{Error, Result};

/// B_{2m}/(2m)! for m = 1..=10.
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];
const SHIFT_MARGIN: f64 = 30.0;

/// ζ(p, q).
pub fn hurwitz_zeta(p: Complex64, q: f64) -> Result<Complex64> {
    hurwitz_zeta_ladder(p, 1, q).map(|v| v[0])
}

/// ζ(p₀ + 2j, q) for j = 0..count, sharing the expensive powers.
pub fn hurwitz_zeta_ladder(p0: Complex64, count: usize, q: f64) -> Result<Vec<Complex64>> {
    let mut out = hurwitz_zeta_ladder_scaled(p0, count, q)?;
    let mut qp = (-p0 * q.ln()).exp();
    let step = 1.0 / (q * q);
    for v in out.iter_mut() {
        *v *= qp;
        qp *= step;
    }
    Ok(out)
}

/// q^{p_j} ζ(p_j, q) for p_j = p₀ + 2j, j = 0..count. The scaling keeps every
/// value O(1) however large q^{−p_j} would be.
pub fn hurwitz_zeta_ladder_scaled(p0: Complex64, count: usize, q: f64) -> Result<Vec<Complex64>> {
    if !(p0.re > 1.0) {
        return Err(Error::domain(format!("hurwitz_zeta needs Re p > 1, got {p0}")));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("hurwitz_zeta needs q > 0, got {q}")));
    }
    let n_head = (p0.norm() + count as f64 + SHIFT_MARGIN - q).ceil().max(0.0) as usize;
    let big_q = q + n_head as f64;

    // ((q+k)/q)^{−p_j}, advanced by ((q+k)/q)^{−2} per rung
    let mut heads: Vec<(Complex64, f64)> = (0..n_head)
        .map(|k| {
            let ratio = k as f64 / q;
            let r = 1.0 / ((1.0 + ratio) * (1.0 + ratio));
            ((-p0 * ratio.ln_1p()).exp(), r)
        })
        .collect();
    let inv_q = 1.0 / big_q;
    let rho = big_q / q;
    let mut rho_pow = (-p0 * rho.ln()).exp(); // (Q/q)^{−p_j}
    let rho_step = 1.0 / (rho * rho);

    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let p = p0 + 2.0 * j as f64;
        let mut acc = KahanSum::new();
        for (base, r) in heads.iter_mut() {
            acc.add(*base);
            *base *= *r;
        }
        acc.add(rho_pow * big_q / (p - 1.0));
        acc.add(rho_pow * 0.5);
        // Σ_m B_{2m}/(2m)! (p)_{2m−1} Q^{1−2m}, times (Q/q)^{−p}
        let mut poch = p;
        let mut qp = rho_pow * inv_q;
        for (m, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
            if m > 0 {
                let k = (2 * m) as f64;
                poch *= (p + k - 1.0) * (p + k);
                qp *= inv_q * inv_q;
            }
            acc.add(poch * qp * b);
        }
        out.push(acc.value());
        rho_pow *= rho_step;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::zeta;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reduces_to_riemann_zeta() {
        for &p in &[c(2.0, 0.0), c(3.5, 1.0), c(1.3, -0.4), c(9.0, 0.0)] {
            let h = hurwitz_zeta(p, 1.0).unwrap();
            let z = zeta(p).unwrap();
            assert!((h - z).norm() / z.norm() < 1e-13, "p={p}");
        }
    }

    #[test]
    fn shift_relation_and_ladder() {
        let p0 = c(4.2, 0.8);
        let q = 2.7;
        let ladder = hurwitz_zeta_ladder(p0, 12, q).unwrap();
        for (j, &v) in ladder.iter().enumerate() {
            let p = p0 + 2.0 * j as f64;
            let single = hurwitz_zeta(p, q).unwrap();
            assert!((v - single).norm() <= 1e-14 * single.norm());
            // ζ(p, q) − ζ(p, q+1) = q^{−p}
            let next = hurwitz_zeta(p, q + 1.0).unwrap();
            let diff = v - next - (-p * q.ln()).exp();
            assert!(diff.norm() <= 1e-13 * v.norm(), "j={j}");
        }
    }

    #[test]
    fn scaled_ladder_survives_huge_exponents() {
        let q = 4000.0;
        let v = hurwitz_zeta_ladder_scaled(c(9.0, 1.0), 40, q).unwrap();
        for (j, x) in v.iter().enumerate() {
            // q^p ζ(p, q) = 1 + q/(p−1) + 1/2 + O(1/q) for large q
            let p = c(9.0 + 2.0 * j as f64, 1.0);
            let approx = q / (p - 1.0) + 0.5;
            assert!(x.re.is_finite() && (x - approx).norm() < 1.0, "j={j} {x}");
        }
    }

    #[test]
    fn half_integer_shift() {
        // ζ(2, 1/2) = 3ζ(2) = π²/2
        let v = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((v.re - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert!(hurwitz_zeta(c(1.0, 0.0), 1.0).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
    }
}
