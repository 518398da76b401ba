//! Modified Bessel function K_ν(x) of complex order and real positive argument.
//!
//! Evaluated from K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt. The integrand is even
//! and analytic in a strip, so the trapezoid rule converges geometrically; the
//! step is halved until successive sums agree.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest |Re ν| accepted.
pub const MAX_ORDER_RE: f64 = 20.0;

const DROP: f64 = 46.0; // e^{-46} ≈ 1e-20 relative to the peak
const MIN_INTERVALS: usize = 32;
const MAX_LEVELS: usize = 14;

/// e^{x} K_ν(x).
pub fn bessel_k_scaled(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k needs x > 0, got {x}")));
    }
    if !(nu.re.abs() <= MAX_ORDER_RE) || !nu.im.is_finite() {
        return Err(Error::domain(format!(
            "bessel_k order {nu} outside |Re nu| <= {MAX_ORDER_RE}"
        )));
    }

    let nr = nu.re.abs();
    // log of the dominant part of the integrand, shifted by +x.
    let envelope = |t: f64| -x * (t.cosh() - 1.0) + nr * t;
    let t_peak = (nr / x).asinh();
    let peak = envelope(t_peak);
    let mut t_end = t_peak.max(0.5);
    while envelope(t_end) > peak - DROP {
        t_end += 0.25;
    }

    let f = |t: f64| {
        let base = -x * (t.cosh() - 1.0);
        0.5 * ((nu * t + base).exp() + (-nu * t + base).exp())
    };
    // |f| bound, used to recognise the rounding floor under cancellation.
    let f_abs = |t: f64| {
        let base = -x * (t.cosh() - 1.0);
        0.5 * ((nr * t + base).exp() + (-nr * t + base).exp())
    };

    let mut n = MIN_INTERVALS;
    let mut h = t_end / n as f64;
    let mut sum = 0.5 * (f(0.0) + f(t_end));
    let mut abs_sum = 0.5 * (f_abs(0.0) + f_abs(t_end));
    for k in 1..n {
        let t = k as f64 * h;
        sum += f(t);
        abs_sum += f_abs(t);
    }
    let mut prev = sum * h;
    for _ in 0..MAX_LEVELS {
        // add midpoints
        let mut mid = Complex64::new(0.0, 0.0);
        let mut mid_abs = 0.0;
        for k in 0..n {
            let t = (k as f64 + 0.5) * h;
            mid += f(t);
            mid_abs += f_abs(t);
        }
        sum += mid;
        abs_sum += mid_abs;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        let floor = 64.0 * f64::EPSILON * abs_sum * h;
        if diff <= 1e-14 * cur.norm() || diff <= floor {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Convergence {
        what: "bessel_k quadrature",
        best: prev,
        estimate: 1.0,
    })
}

/// K_ν(x) for x > 0, |Re ν| ≤ 20.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    let scaled = bessel_k_scaled(nu, x)?;
    Ok(scaled * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.1, 1.0, 7.5, 40.0] {
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
            let got = bessel_k(c(0.5, 0.0), x).unwrap();
            assert!((got.re - want).abs() / want < 1e-13, "x={x}");
            assert!(got.im.abs() < 1e-14 * want);
        }
        // K_{3/2}(x) = √(π/2x) e^{−x}(1 + 1/x)
        let x = 2.0;
        let want = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
        assert!((bessel_k(c(1.5, 0.0), x).unwrap().re - want).abs() / want < 1e-13);
    }

    #[test]
    fn reference_complex_order() {
        let want = c(0.031_803_510_856_356_174, 0.055_178_099_294_758_95);
        let got = bessel_k(c(2.5, 1.5), 3.0).unwrap();
        assert!((got - want).norm() / want.norm() < 1e-12, "{got}");
    }

    #[test]
    fn order_symmetry() {
        let nu = c(1.7, -0.4);
        let a = bessel_k(nu, 2.0).unwrap();
        let b = bessel_k(-nu, 2.0).unwrap();
        assert!((a - b).norm() <= 1e-15 * a.norm());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(bessel_k(c(0.0, 0.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(c(0.0, 0.0), -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(c(21.0, 0.0), 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn large_argument_underflows_gracefully() {
        let v = bessel_k(c(2.5, 0.0), 900.0).unwrap();
        assert!(v.norm() < 1e-300);
        let scaled = bessel_k_scaled(c(2.5, 0.0), 900.0).unwrap();
        let want = (PI / 1800.0).sqrt();
        assert!((scaled.re - want).abs() / want < 1e-2);
    }
}
