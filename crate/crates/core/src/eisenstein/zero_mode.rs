//! The zero Fourier coefficient a₀(y, θ, s) of E¹ and its behaviour at s = 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::e1::DIRICHLET_SHIFT;
use crate::error::{Error, Result};
use crate::geometry::y_pow;
use crate::modular::{dirichlet_zero, phi_closed};
use crate::numerics::{gamma, rgamma};

/// Step sizes ε for the limit s = 1 + ε.
pub const RESIDUE_EPSILONS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];
const RESIDUE_AGREEMENT: f64 = 1e-4;

/// A zero coefficient together with the point it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCoefficient {
    pub y: f64,
    pub theta: f64,
    pub s: Complex64,
    pub value: Complex64,
}

impl ZeroCoefficient {
    pub fn evaluate(y: f64, theta: f64, s: Complex64) -> Result<Self> {
        Ok(Self { y, theta, s, value: zero_coefficient(y, theta, s)? })
    }
}

fn check_y(y: f64) -> Result<()> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("zero coefficient needs y > 0, got {y}")));
    }
    Ok(())
}

/// √π y^{−s} sin θ/(s+1) · Γ(s+½)/Γ(s), the factor multiplying the constant
/// Dirichlet series.
fn second_term_factor(y: f64, theta: f64, s: Complex64) -> Result<Complex64> {
    Ok(PI.sqrt() * y_pow(y, -s) * theta.sin() / (s + 1.0) * gamma(s + 0.5)? * rgamma(s))
}

/// a₀ = y^{s+1} sin θ + √π y^{−s} sin θ/(s+1) · Γ(s+½)/Γ(s) · φ(s), with the
/// scattering term φ(s) of the classical series.
pub fn zero_coefficient(y: f64, theta: f64, s: Complex64) -> Result<Complex64> {
    check_y(y)?;
    let first = y_pow(y, s + 1.0) * theta.sin();
    Ok(first + second_term_factor(y, theta, s)? * phi_closed(s)?)
}

/// The constant term that ∫₀¹ E¹ dx actually produces: the sign of the
/// leading term flipped and ζ(2s+1)/ζ(2s+2) in place of φ(s).
pub fn zero_coefficient_reconciled(y: f64, theta: f64, s: Complex64) -> Result<Complex64> {
    check_y(y)?;
    let first = -y_pow(y, s + 1.0) * theta.sin();
    Ok(first + second_term_factor(y, theta, s)? * dirichlet_zero(s + DIRICHLET_SHIFT)?)
}

/// lim_{s→1} (s−1) a₀(y, θ, s) by two rounds of Richardson extrapolation
/// over [`RESIDUE_EPSILONS`].
pub fn residue_at_one(y: f64, theta: f64) -> Result<Complex64> {
    check_y(y)?;
    let f = |eps: f64| -> Result<Complex64> {
        Ok(eps * zero_coefficient(y, theta, Complex64::new(1.0 + eps, 0.0))?)
    };
    let [e0, e1, e2] = RESIDUE_EPSILONS;
    let (f0, f1, f2) = (f(e0)?, f(e1)?, f(e2)?);
    let r1 = 2.0 * f1 - f0;
    let r1_fine = 2.0 * f2 - f1;
    let r2 = (4.0 * r1_fine - r1) / 3.0;
    let estimate = (r2 - r1_fine).norm();
    if estimate > RESIDUE_AGREEMENT {
        return Err(Error::Convergence { what: "residue_at_one", best: r2, estimate });
    }
    Ok(r2)
}
