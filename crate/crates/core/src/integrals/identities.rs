//! The integral identities used to derive the Fourier expansion of E¹, each
//! checked as quadrature against closed form on a parameter grid.
//!
//! The Fourier-type integrals are exponentially small (≈ e^{−2πny}), far
//! below what real-line quadrature can resolve against O(1) integrands. They
//! are therefore integrated along the parabola
//! t = t₀ + L(τ ∓ i(η + τ²)), which lies in the half-plane where the
//! exponential decays and stays clear of the branch cuts of (t²+1)^{−σ};
//! Cauchy's theorem makes this exactly the real-line integral.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{
    bessel_k, e_real, gamma, hyp1f2, nonpositive_integer, quad_finite, quad_infinite, rgamma,
    QuadratureSpec, POLE_TOLERANCE,
};

/// Acceptance threshold on each identity's maximum relative error.
pub const IDENTITY_TOLERANCE: f64 = 1e-7;

/// Depth of the contour vertex, as a fraction of the distance to the
/// nearest singularity.
const DEPTH: f64 = 0.9;

const S_GRID: [f64; 3] = [1.5, 2.0, 2.7];
const N_GRID: [i64; 3] = [1, 2, 5];
const Y_GRID: [f64; 3] = [0.7, 1.0, 2.0];
/// (c, d, x) for the shifted integrals.
const SHIFTS: [(f64, f64, f64); 2] = [(1.0, 0.0, 0.1), (3.0, 2.0, 0.37)];

/// One identity's outcome over its grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub grid: String,
    pub points: usize,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Evaluation failures; any entry fails the identity.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identities: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|c| c.pass)
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-300, rel_tol: 1e-13, max_levels: 14 }
}

fn cpow(base: Complex64, p: Complex64) -> Complex64 {
    (p * base.ln()).exp()
}

/// e(w) = exp(2πiw) for complex w.
fn e_complex(w: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * w).exp()
}

/// ∫_ℝ g(t) dt along t = center + scale(τ + i·dir(η + τ²)); dir = 0 is the
/// real line itself.
fn contour<G: Fn(Complex64) -> Complex64>(g: G, center: f64, scale: f64, dir: f64) -> Result<Complex64> {
    let r = quad_infinite(
        |tau| {
            let t = Complex64::new(center + scale * tau, scale * dir * (DEPTH + tau * tau));
            let dt = Complex64::new(scale, 2.0 * scale * dir * tau);
            g(t) * dt
        },
        &spec(),
    )?;
    Ok(r.value)
}

/// ∫_ℝ (t²+1)^{−σ} e(−nyt) dt in closed form.
fn fourier_power_closed(sigma: Complex64, n: i64, y: f64) -> Result<Complex64> {
    if n == 0 {
        return Ok(PI.sqrt() * gamma(sigma - 0.5)? * rgamma(sigma));
    }
    let a = n.unsigned_abs() as f64 * y;
    let nu = sigma - 0.5;
    Ok(2.0 * cpow(Complex64::new(PI, 0.0), sigma) * cpow(Complex64::new(a, 0.0), nu) * bessel_k(nu, 2.0 * PI * a)? * rgamma(sigma))
}

/// sin(πs)Γ(−s−1), through π/Γ(s+2) where the literal product is 0·∞.
fn sin_gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(-s - 1.0).is_some() {
        return Ok(PI * rgamma(s + 2.0));
    }
    Ok((PI * s).sin() * gamma(-s - 1.0)?)
}

/// ∫₀^∞ t (t²+1)^{−s−2} sin(2πnyt) dt in closed form.
fn sine_transform_closed(s: Complex64, n: i64, y: f64) -> Result<Complex64> {
    let a = n as f64 * y;
    Ok(cpow(Complex64::new(PI, 0.0), s + 1.0) * cpow(Complex64::new(a, 0.0), s + 1.5) * sin_gamma(s)? * bessel_k(-s - 0.5, 2.0 * PI * a)?)
}

/// An antiderivative of y^{λ−1} K_ν(y) for Re(λ ± ν) > 0, ν ∉ ℤ:
///
/// 2^{ν−1}π csc(πν)/((λ−ν)Γ(1−ν)) y^{λ−ν} ₁F₂((λ−ν)/2; 1−ν, (λ−ν)/2+1; y²/4)
///   − 2^{−ν−1}π csc(πν)/((λ+ν)Γ(1+ν)) y^{λ+ν} ₁F₂((λ+ν)/2; 1+ν, (λ+ν)/2+1; y²/4).
pub fn bessel_power_antiderivative(y: f64, lambda: f64, nu: Complex64) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("antiderivative needs y > 0, got {y}")));
    }
    if !(lambda - nu.re.abs() > 0.0) {
        return Err(Error::Domain(format!("need Re(lambda ± nu) > 0, got lambda = {lambda}, nu = {nu}")));
    }
    let sin = (PI * nu).sin();
    if sin.norm() < POLE_TOLERANCE {
        return Err(Error::Pole { function: "csc(pi nu)", at: nu });
    }
    let csc = sin.inv();
    let z = Complex64::new(y * y / 4.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let yc = Complex64::new(y, 0.0);
    let am = (lambda - nu) / 2.0;
    let ap = (lambda + nu) / 2.0;
    let first = cpow(two, nu - 1.0) * PI * csc / (lambda - nu) * rgamma(1.0 - nu) * cpow(yc, lambda - nu)
        * hyp1f2(am, 1.0 - nu, am + 1.0, z)?;
    let second = cpow(two, -nu - 1.0) * PI * csc / (lambda + nu) * rgamma(1.0 + nu) * cpow(yc, lambda + nu)
        * hyp1f2(ap, 1.0 + nu, ap + 1.0, z)?;
    Ok(first - second)
}

/// Relative error with an absolute floor for vanishing references.
fn rel_err(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1e-300)
}

type Point = Box<dyn Fn() -> Result<f64> + Send + Sync>;

fn run(name: &str, grid: &str, points: Vec<Point>) -> IdentityCheck {
    let results: Vec<Result<f64>> = points.par_iter().map(|p| p()).collect();
    let mut max_rel_err = 0.0f64;
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(e) if e.is_finite() => max_rel_err = max_rel_err.max(e),
            Ok(e) => errors.push(format!("non-finite error {e}")),
            Err(e) => errors.push(e.to_string()),
        }
    }
    IdentityCheck {
        name: name.to_owned(),
        grid: grid.to_owned(),
        points: points.len(),
        max_rel_err,
        tolerance: IDENTITY_TOLERANCE,
        pass: errors.is_empty() && max_rel_err < IDENTITY_TOLERANCE,
        errors,
    }
}

fn fourier_power() -> IdentityCheck {
    let mut pts: Vec<Point> = Vec::new();
    for s in S_GRID {
        for n in [0, 1, 2, 5] {
            for y in Y_GRID {
                pts.push(Box::new(move || {
                    let s = Complex64::new(s, 0.0);
                    let dir = if n == 0 { 0.0 } else { -1.0 };
                    let lhs = contour(|t| cpow(t * t + 1.0, -s) * e_complex(-(n as f64) * y * t), 0.0, 1.0, dir)?;
                    Ok(rel_err(lhs, fourier_power_closed(s, n, y)?))
                }));
            }
        }
    }
    run("fourier_transform_of_power", "s in {1.5, 2, 2.7} x n in {0, 1, 2, 5} x y in {0.7, 1, 2}", pts)
}

fn sine_transform() -> IdentityCheck {
    let mut pts: Vec<Point> = Vec::new();
    for s in S_GRID {
        for n in N_GRID {
            for y in Y_GRID {
                pts.push(Box::new(move || {
                    let s = Complex64::new(s, 0.0);
                    // t(t²+1)^{−s−2} is odd, so the sine integral over (0, ∞)
                    // is (1/2i) ∫_ℝ t(t²+1)^{−s−2} e(nyt) dt
                    let full = contour(|t| t * cpow(t * t + 1.0, -s - 2.0) * e_complex(n as f64 * y * t), 0.0, 1.0, 1.0)?;
                    let lhs = full / Complex64::new(0.0, 2.0);
                    Ok(rel_err(lhs, sine_transform_closed(s, n, y)?))
                }));
            }
        }
    }
    run("sine_transform", "s in {1.5, 2, 2.7} x n in {1, 2, 5} x y in {0.7, 1, 2}", pts)
}

fn gamma_ratio() -> IdentityCheck {
    let mut pts: Vec<Point> = Vec::new();
    for s in [1.5, 2.0, 2.7, 0.4] {
        pts.push(Box::new(move || {
            let s = Complex64::new(s, 0.0);
            let lhs = gamma(s + 0.5)? * rgamma(s + 1.0) - 2.0 * gamma(s + 1.5)? * rgamma(s + 2.0);
            let rhs = -gamma(s + 0.5)? * rgamma(s) / (s + 1.0);
            // Γ(σ−½)/Γ(σ) = π^{−½} ∫(t²+1)^{−σ} dt
            let quad = (contour(|t| cpow(t * t + 1.0, -s - 1.0), 0.0, 1.0, 0.0)?
                - 2.0 * contour(|t| cpow(t * t + 1.0, -s - 2.0), 0.0, 1.0, 0.0)?)
                / PI.sqrt();
            Ok(rel_err(lhs, rhs).max(rel_err(quad, rhs)))
        }));
    }
    run("gamma_ratio", "s in {1.5, 2, 2.7, 0.4}", pts)
}

fn bessel_antiderivative() -> IdentityCheck {
    let mut pairs: Vec<(f64, Complex64)> =
        [Complex64::new(1.25, 0.0), Complex64::new(1.7, 0.0), Complex64::new(1.4, 0.3)]
            .into_iter()
            .map(|s| (2.5, -s - 0.5))
            .collect();
    pairs.push((3.0, Complex64::new(0.3, 0.2)));
    pairs.push((1.8, Complex64::new(-0.45, 0.0)));
    let (lo, hi) = (0.5, 3.0);
    let mut pts: Vec<Point> = Vec::new();
    for (lambda, nu) in pairs {
        pts.push(Box::new(move || {
            let integrand = |y: f64| Ok::<_, Error>(y.powf(lambda - 1.0) * bessel_k(nu, y)?);
            let f = |y: f64| bessel_power_antiderivative(y, lambda, nu);
            let mut worst = 0.0f64;
            let h = 1e-3;
            for k in 1..=5 {
                let y = lo + (hi - lo) * k as f64 / 6.0;
                let d = (f(y - 2.0 * h)? - 8.0 * f(y - h)? + 8.0 * f(y + h)? - f(y + 2.0 * h)?) / (12.0 * h);
                worst = worst.max(rel_err(d, integrand(y)?));
            }
            let definite = super::integrate_fallible(integrand, |g| quad_finite(g, lo, hi, &spec()))?.value;
            worst = worst.max(rel_err(f(hi)? - f(lo)?, definite));
            Ok(worst)
        }));
    }
    run(
        "bessel_power_antiderivative",
        "(lambda, nu) in {(5/2, -s-1/2) : s in {1.25, 1.7, 1.4+0.3i}} + {(3, 0.3+0.2i), (1.8, -0.45)}; y in [0.5, 3]",
        pts,
    )
}

#[derive(Clone, Copy)]
enum Shifted {
    Square,
    Power,
    Linear,
}

fn shifted(kind: Shifted) -> IdentityCheck {
    let ns: &[i64] = match kind {
        Shifted::Linear => &[1, 2, 5],
        _ => &[0, 1, 2, 5],
    };
    let mut pts: Vec<Point> = Vec::new();
    for s in S_GRID {
        for &n in ns {
            for y in Y_GRID {
                for (c, d, x) in SHIFTS {
                    pts.push(Box::new(move || {
                        let s = Complex64::new(s, 0.0);
                        let nf = n as f64;
                        let center = -x - d / c;
                        let dir = if n == 0 { 0.0 } else { -1.0 };
                        let w = |t: Complex64| {
                            let u = c * (x + t) + d;
                            (u, cpow(u * u + c * c * y * y, -s - 2.0) * e_complex(-nf * t))
                        };
                        let phase = e_real(nf * x + nf * d / c);
                        let cp = |p: Complex64| cpow(Complex64::new(c, 0.0), p);
                        let yp = |p: Complex64| cpow(Complex64::new(y, 0.0), p);
                        let (lhs, rhs) = match kind {
                            Shifted::Square => (
                                contour(|t| { let (u, k) = w(t); u * u * k }, center, y, dir)?,
                                phase * cp(-2.0 * s - 2.0) * yp(-2.0 * s - 1.0)
                                    * (fourier_power_closed(s + 1.0, n, y)? - fourier_power_closed(s + 2.0, n, y)?),
                            ),
                            Shifted::Power => (
                                contour(|t| w(t).1, center, y, dir)?,
                                phase * cp(-2.0 * s - 4.0) * yp(-2.0 * s - 3.0) * fourier_power_closed(s + 2.0, n, y)?,
                            ),
                            Shifted::Linear => (
                                contour(|t| { let (u, k) = w(t); u * k }, center, y, dir)?,
                                Complex64::new(0.0, -2.0) * phase * cp(-2.0 * s - 3.0) * yp(-2.0 * s - 2.0)
                                    * sine_transform_closed(s, n, y)?,
                            ),
                        };
                        Ok(rel_err(lhs, rhs))
                    }));
                }
            }
        }
    }
    let (name, n_desc) = match kind {
        Shifted::Square => ("shifted_square_kernel", "{0, 1, 2, 5}"),
        Shifted::Power => ("shifted_power_kernel", "{0, 1, 2, 5}"),
        Shifted::Linear => ("shifted_linear_kernel", "{1, 2, 5}"),
    };
    let grid = format!("s in {{1.5, 2, 2.7}} x n in {n_desc} x y in {{0.7, 1, 2}} x (c, d, x) in {{(1, 0, 0.1), (3, 2, 0.37)}}");
    run(name, &grid, pts)
}

/// Runs every identity on its grid; failures are reported, never raised.
pub fn integral_identity_suite() -> IdentityReport {
    IdentityReport {
        identities: vec![
            fourier_power(),
            sine_transform(),
            gamma_ratio(),
            bessel_antiderivative(),
            shifted(Shifted::Square),
            shifted(Shifted::Power),
            shifted(Shifted::Linear),
        ],
    }
}
