//! Unfolding y^k |f|² against E¹ over a lifted horocycle:
//!
//! ∫₀¹ y₀^k |f(x + iy₀)|² α¹ dx = −y₀^{k+s+1} sin θ Σ |aₙ|² e^{−4πny₀}.

use num_complex::Complex64;

use super::qexpansion::ModularFormCoefficients;
use crate::error::{Error, Result};
use crate::geometry::y_pow;
use crate::numerics::{quad_periodic, KahanSum, QuadratureSpec};

/// The sum stops once a term falls below this fraction of the partial sum.
pub const RANKIN_SELBERG_TOL: f64 = 1e-16;

fn check(y0: f64, s: Complex64) -> Result<()> {
    if !(y0 > 0.0) || !y0.is_finite() {
        return Err(Error::Domain(format!("y0 must be positive, got {y0}")));
    }
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("need Re s > 1, got {s}")));
    }
    Ok(())
}

/// −y₀^{k+s+1} sin θ Σ |aₙ|² e^{−4πny₀}, truncated once the terms drop below
/// [`RANKIN_SELBERG_TOL`] relative to the partial sum. A one-term prefix is a
/// constant form and needs no truncation.
pub fn rankin_selberg_closed(f: &ModularFormCoefficients, y0: f64, theta: f64, s: Complex64) -> Result<Complex64> {
    check(y0, s)?;
    let a = f.coefficients();
    let mut acc = KahanSum::new();
    let mut converged = a.len() == 1;
    let mut last = 0.0;
    for (n, an) in a.iter().enumerate() {
        let term = an.norm_sqr() * (-4.0 * std::f64::consts::PI * n as f64 * y0).exp();
        acc.add(Complex64::new(term, 0.0));
        last = term;
        if n >= 1 && term <= RANKIN_SELBERG_TOL * acc.value().re {
            converged = true;
            break;
        }
    }
    let prefactor = -y_pow(y0, s + (f.weight() as f64 + 1.0)) * theta.sin();
    let value = prefactor * acc.value();
    if !converged {
        return Err(Error::Convergence { what: "rankin_selberg_closed", best: value, estimate: prefactor.norm() * last });
    }
    Ok(value)
}

/// ∫₀¹ y₀^k |f(x + iy₀)|² · (−y₀^{s+1} sin θ) dx by the trapezoid rule over
/// the truncated q-expansion.
pub fn rankin_selberg_lhs_oracle(
    f: &ModularFormCoefficients,
    y0: f64,
    theta: f64,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check(y0, s)?;
    let alpha = -y_pow(y0, s + 1.0) * theta.sin();
    let yk = y0.powi(f.weight() as i32);
    let r = quad_periodic(
        |x| alpha * (yk * f.evaluate(Complex64::new(x, y0)).norm_sqr()),
        0.0,
        1.0,
        spec,
    )?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::eisenstein_qexpansion;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn constant_form() {
        let f = ModularFormCoefficients::new(4, vec![c(1.0)]).unwrap();
        let closed = rankin_selberg_closed(&f, 1.0, FRAC_PI_2, c(2.0)).unwrap();
        assert_eq!(closed, c(-1.0));
        let lhs = rankin_selberg_lhs_oracle(&f, 1.3, 0.7, c(2.0), &QuadratureSpec::default()).unwrap();
        let expected = -(1.3f64).powf(7.0) * 0.7f64.sin();
        assert!((lhs.re - expected).abs() < 1e-13 * expected.abs());
    }

    #[test]
    fn zero_angle_vanishes() {
        let f = eisenstein_qexpansion(4, 20).unwrap();
        assert_eq!(rankin_selberg_closed(&f, 1.0, 0.0, c(2.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn both_sides_agree() {
        for k in [4, 6] {
            let f = eisenstein_qexpansion(k, 20).unwrap();
            for (y0, theta, s) in [(1.0, FRAC_PI_2, 2.0), (1.5, FRAC_PI_3, 2.5)] {
                let closed = rankin_selberg_closed(&f, y0, theta, c(s)).unwrap();
                let lhs = rankin_selberg_lhs_oracle(&f, y0, theta, c(s), &QuadratureSpec::default()).unwrap();
                assert!((closed - lhs).norm() < 1e-10 * closed.norm(), "k={k}: {closed} vs {lhs}");
            }
        }
    }

    #[test]
    fn short_prefix_is_reported() {
        let f = eisenstein_qexpansion(4, 2).unwrap();
        assert!(matches!(rankin_selberg_closed(&f, 0.3, 1.0, c(2.0)), Err(Error::Convergence { .. })));
    }
}
