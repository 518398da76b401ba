//! Adaptive double-exponential quadrature (tanh-sinh, exp-sinh, sinh-sinh)
//! for complex-valued integrands, plus the trapezoid rule for periodic ones.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::KahanSum;
use crate::error::{Error, Result};

/// Hard ceiling on refinement levels.
pub const MAX_LEVELS: u32 = 20;
const MIN_LEVELS: u32 = 2;
const H0: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_levels: u32,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_levels: u32) -> Result<Self> {
        let spec = Self { abs_tol, rel_tol, max_levels };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_levels < 1 || self.max_levels > MAX_LEVELS {
            return Err(Error::domain(format!(
                "max_levels must lie in 1..={MAX_LEVELS}, got {}",
                self.max_levels
            )));
        }
        Ok(())
    }

    fn accepts(&self, est: f64, value: Complex64) -> bool {
        est <= self.abs_tol.max(self.rel_tol * value.norm())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-15, rel_tol: 1e-12, max_levels: 12 }
    }
}

/// Integral value with the difference between the last two refinements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Shared driver. `node(t)` maps the DE variable to (abscissa, weight) or
/// `None` when the abscissa is not representable (collapsed onto an endpoint
/// or overflowed).
fn de_integrate<F, N>(f: F, node: N, t_max: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
    N: Fn(f64) -> Option<(f64, f64)>,
{
    spec.validate()?;
    let mut evaluations = 0usize;
    let mut sample = |t: f64| -> Result<Complex64> {
        match node(t) {
            Some((x, w)) if w > 0.0 && w.is_finite() => {
                let fx = f(x);
                evaluations += 1;
                if !(fx.re.is_finite() && fx.im.is_finite()) {
                    return Err(Error::domain(format!("integrand not finite at x = {x}")));
                }
                Ok(fx * w)
            }
            _ => Ok(Complex64::new(0.0, 0.0)),
        }
    };

    let mut raw = KahanSum::new();
    let k_max = (t_max / H0).floor() as i64;
    for k in -k_max..=k_max {
        raw.add(sample(k as f64 * H0)?);
    }
    let mut h = H0;
    let mut prev = raw.value() * h;
    let mut est = f64::INFINITY;
    for level in 1..=spec.max_levels {
        h *= 0.5;
        let k_max = (t_max / h).floor() as i64;
        let mut k = -k_max + if k_max % 2 == 0 { 1 } else { 0 };
        while k <= k_max {
            raw.add(sample(k as f64 * h)?);
            k += 2;
        }
        let cur = raw.value() * h;
        est = (cur - prev).norm();
        if level >= MIN_LEVELS && spec.accepts(est, cur) {
            return Ok(QuadResult { value: cur, error_estimate: est, evaluations });
        }
        prev = cur;
    }
    Err(Error::Convergence { what: "double-exponential quadrature", best: prev, estimate: est })
}

/// ∫_lo^hi f(t) dt by tanh-sinh. Integrable endpoint singularities are fine.
pub fn quad_finite<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain("quad_finite needs finite limits"));
    }
    if lo == hi {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, evaluations: 0 });
    }
    if lo > hi {
        return quad_finite(f, hi, lo, spec).map(|r| QuadResult { value: -r.value, ..r });
    }
    let half = 0.5 * (hi - lo);
    let node = move |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let delta = 2.0 * e / (1.0 + e);
        let offset = half * delta;
        let x = if t >= 0.0 { hi - offset } else { lo + offset };
        if offset == 0.0 || x <= lo || x >= hi {
            return None;
        }
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        Some((x, w))
    };
    de_integrate(f, node, 4.0, spec)
}

/// ∫_lo^∞ f(t) dt by exp-sinh.
pub fn quad_semiinfinite<F>(f: F, lo: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !lo.is_finite() {
        return Err(Error::domain("quad_semiinfinite needs a finite lower limit"));
    }
    let node = move |t: f64| {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let x = lo + e;
        if x <= lo || !x.is_finite() {
            return None;
        }
        Some((x, FRAC_PI_2 * t.cosh() * e))
    };
    de_integrate(f, node, 4.5, spec)
}

/// ∫_{−∞}^{∞} f(t) dt by sinh-sinh.
pub fn quad_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let node = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let x = u.sinh();
        if !x.is_finite() {
            return None;
        }
        Some((x, FRAC_PI_2 * t.cosh() * u.cosh()))
    };
    de_integrate(f, node, 4.5, spec)
}

/// ∫_lo^{lo+period} f for a smooth periodic f, by the trapezoid rule with
/// doubling (geometric convergence for analytic integrands).
pub fn quad_periodic<F>(f: F, lo: f64, period: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(period > 0.0) {
        return Err(Error::domain("period must be positive"));
    }
    let mut n = 16usize;
    let mut raw = KahanSum::new();
    for k in 0..n {
        raw.add(f(lo + period * k as f64 / n as f64));
    }
    let mut evaluations = n;
    let mut prev = raw.value() * (period / n as f64);
    let mut est = f64::INFINITY;
    for level in 1..=spec.max_levels {
        for k in 0..n {
            raw.add(f(lo + period * (2 * k + 1) as f64 / (2 * n) as f64));
        }
        evaluations += n;
        n *= 2;
        let cur = raw.value() * (period / n as f64);
        est = (cur - prev).norm();
        if level >= 1 && spec.accepts(est, cur) {
            return Ok(QuadResult { value: cur, error_estimate: est, evaluations });
        }
        prev = cur;
    }
    Err(Error::Convergence { what: "periodic trapezoid", best: prev, estimate: est })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constants_and_exponentials() {
        let spec = QuadratureSpec::default();
        assert!((quad_finite(|_| re(1.0), 0.0, 1.0, &spec).unwrap().value - 1.0).norm() < 1e-14);
        assert!((quad_semiinfinite(|t| re((-t).exp()), 0.0, &spec).unwrap().value - 1.0).norm() < 1e-13);
        let r = quad_semiinfinite(|t| re(t * (-t).exp()), 0.0, &spec).unwrap();
        assert!((r.value - 1.0).norm() < 1e-13);
        let g = quad_infinite(|t| re((-t * t).exp()), &spec).unwrap();
        assert!((g.value.re - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        let spec = QuadratureSpec::default();
        let r = quad_finite(|t| re(1.0 / t.sqrt()), 0.0, 1.0, &spec).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12);
        let r = quad_finite(|t| re(t.ln()), 0.0, 1.0, &spec).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_limits_and_empty_interval() {
        let spec = QuadratureSpec::default();
        let r = quad_finite(re, 2.0, 0.0, &spec).unwrap();
        assert!((r.value.re + 2.0).abs() < 1e-14);
        assert_eq!(quad_finite(re, 1.0, 1.0, &spec).unwrap().value, re(0.0));
    }

    #[test]
    fn orthogonality_of_characters() {
        let spec = QuadratureSpec::default();
        for n in -5i32..=5 {
            for m in -5i32..=5 {
                let k = (n - m) as f64;
                let r = quad_finite(|x| Complex64::from_polar(1.0, 2.0 * PI * k * x), 0.0, 1.0, &spec)
                    .unwrap();
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((r.value - want).norm() < 1e-12, "n={n} m={m}");
                let p = quad_periodic(|x| Complex64::from_polar(1.0, 2.0 * PI * k * x), 0.0, 1.0, &spec)
                    .unwrap();
                assert!((p.value - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 5).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 21).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0).is_err());
    }

    #[test]
    fn non_convergence_reports_best_value() {
        let spec = QuadratureSpec::new(1e-300, 1e-300, 3).unwrap();
        let err = quad_finite(|t| re((50.0 * t).sin()), 0.0, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }
}
