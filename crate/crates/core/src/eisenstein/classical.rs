//! The classical non-holomorphic Eisenstein series E(z, s) = Σ Im(γz)^s.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::cosets::{coset_sum, ladder_length, neg_binomials, CosetKernel, TailFamily};
use super::{mode_tail, require_convergent_s, require_fourier_band, SeriesResult};
use crate::error::{Error, Result};
use crate::geometry::y_pow;
use crate::modular::{phi_closed, phi_n_closed, reduce_point, TruncationPolicy};
use crate::numerics::{bessel_k, gamma, rgamma, KahanSum};

/// y^s |cz+d|^{−2s} = y^s (u² + v²)^{−s}.
struct ClassicalKernel {
    s: Complex64,
    y: f64,
    ln_y: f64,
    real: bool,
}

impl ClassicalKernel {
    fn new(s: Complex64, y: f64) -> Self {
        Self { s, y, ln_y: y.ln(), real: s.im == 0.0 }
    }
}

impl CosetKernel for ClassicalKernel {
    #[inline]
    fn term(&self, u: f64, v: f64) -> Complex64 {
        let l = self.ln_y - (u * u + v * v).ln();
        if self.real {
            Complex64::new((self.s.re * l).exp(), 0.0)
        } else {
            (self.s * l).exp()
        }
    }

    fn tail_families(&self, v: f64) -> Vec<TailFamily> {
        let betas = neg_binomials(self.s, ladder_length(self.s));
        vec![TailFamily { p0: 2.0 * self.s, base: y_pow(self.y, self.s), betas, v, odd: false }]
    }

    fn zero_mode(&self) -> Result<(Complex64, Complex64)> {
        // ∫ y^s (u² + (cy)²)^{−s} du = √π Γ(s−½)/Γ(s) · y^{1−s} c^{1−2s}
        let amp = PI.sqrt() * gamma(self.s - 0.5)? * rgamma(self.s) * y_pow(self.y, 1.0 - self.s);
        Ok((amp, 2.0 * self.s - 1.0))
    }

    fn natural_scale(&self) -> f64 {
        self.y.powf(self.s.re)
    }
}

/// E(z, s) by summing Im(γz)^s over Γ_∞\SL(2,ℤ), after reducing z to the
/// fundamental domain.
pub fn classical_direct(z: Complex64, s: Complex64, policy: &TruncationPolicy) -> Result<SeriesResult> {
    require_convergent_s(s)?;
    let (w, _) = reduce_point(z)?;
    let kernel = ClassicalKernel::new(s, w.im);
    coset_sum(&kernel, w.re, w.im, policy, "classical_direct")
}

/// E(z, s) = y^s + φ(s) y^{1−s} + Σ_{n≠0} 2π^s √y |n|^{s−½} K_{s−½}(2π|n|y) φ(n,s)/Γ(s) e(nx).
pub fn classical_fourier(z: Complex64, s: Complex64, policy: &TruncationPolicy) -> Result<SeriesResult> {
    require_convergent_s(s)?;
    policy.validate()?;
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    let y = z.im;
    require_fourier_band(y)?;
    let x = z.re.rem_euclid(1.0);

    let mut acc = KahanSum::new();
    acc.add(y_pow(y, s));
    acc.add(phi_closed(s)? * y_pow(y, 1.0 - s));

    let prefactor = 2.0 * (s * PI.ln()).exp() * y.sqrt() * rgamma(s);
    let nu = s - 0.5;
    let mut last = 0.0;
    for n in 1..=policy.n_max {
        let nf = n as f64;
        let k = bessel_k(nu, 2.0 * PI * nf * y)?;
        let coeff = prefactor * (nu * nf.ln()).exp() * k * phi_n_closed(n as i64, s)?;
        // n and −n together
        let mode = coeff * 2.0 * (2.0 * PI * nf * x).cos();
        acc.add(mode);
        last = 2.0 * coeff.norm();
    }
    let value = acc.value();
    let estimate = mode_tail(last, policy.n_max, y, nu.re);
    let scale = value.norm().max(1e-8 * y.powf(s.re));
    if !(estimate <= policy.series_tol * scale) {
        return Err(Error::Convergence { what: "classical_fourier", best: value, estimate });
    }
    Ok(SeriesResult { value, tail_estimate: estimate, terms_used: policy.n_max as u64 + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quick() -> TruncationPolicy {
        TruncationPolicy { c_max: 300, ..TruncationPolicy::default() }
    }

    #[test]
    fn two_routes_agree_at_i() {
        let s = c(4.0, 0.0);
        let z = c(0.0, 1.0);
        let d = classical_direct(z, s, &quick()).unwrap();
        let f = classical_fourier(z, s, &quick()).unwrap();
        assert!((d.value - f.value).norm() < 1e-10 * f.value.norm(), "{} vs {}", d.value, f.value);
        assert!(f.value.im.abs() < 1e-12);
    }

    #[test]
    fn two_routes_agree_complex_s() {
        let s = c(2.5, 1.5);
        let z = c(0.3, 1.1);
        let d = classical_direct(z, s, &quick()).unwrap();
        let f = classical_fourier(z, s, &quick()).unwrap();
        assert!((d.value - f.value).norm() < 1e-8 * f.value.norm(), "{} vs {}", d.value, f.value);
    }

    #[test]
    fn large_height_is_constant_term() {
        let s = c(2.0, 0.0);
        let y = 50.0;
        let f = classical_fourier(c(0.2, y), s, &quick()).unwrap();
        let constant = y * y + phi_closed(s).unwrap().re / y;
        assert!((f.value.re - constant).abs() < 1e-20 * y * y + 1e-12);
    }

    #[test]
    fn rejects_outside_convergence_and_band() {
        assert!(matches!(classical_direct(c(0.0, 1.0), c(1.0, 0.0), &quick()), Err(Error::Domain(_))));
        assert!(matches!(classical_fourier(c(0.0, 0.2), c(2.0, 0.0), &quick()), Err(Error::Domain(_))));
    }

    #[test]
    fn invariance_under_generators() {
        let s = c(3.0, 0.0);
        let z = c(0.21, 1.3);
        let base = classical_direct(z, s, &quick()).unwrap().value;
        let shifted = classical_direct(z + 1.0, s, &quick()).unwrap().value;
        let inverted = classical_direct(-1.0 / z, s, &quick()).unwrap().value;
        assert!((base - shifted).norm() < 1e-12 * base.norm());
        assert!((base - inverted).norm() < 1e-12 * base.norm());
    }
}
