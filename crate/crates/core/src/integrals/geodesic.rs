//! ∫ E¹ along the vertical lift {(iy, 0) : y₁ ≤ y ≤ y₂} of a closed geodesic
//! conjugated onto the imaginary axis.
//!
//! Only the φ₂ mode group survives at x = 0, θ = 0. Integrating it termwise
//! against the antiderivative of y^{λ−1} K_ν(y) is written as
//!
//! Λ₁(s) S(s) [y^{2−s} ₁F₂((2−s)/2; (1−2s)/2, (4−s)/2; y²/4)]_{y₁}^{y₂}
//!   − Λ₂(s) S(s) [y^{s+3} ₁F₂((s+3)/2; (2s+3)/2, (s+5)/2; y²/4)]_{y₁}^{y₂}
//!
//! with S(s) = Σ_{n>0} n^{s−1} φ₂(n, s), stated for the strip 1 < Re s < 2.
//! The display is evaluated literally; note that a direct substitution
//! u = 2πny would put (πny)² rather than y²/4 in the ₁F₂ argument.
//! For SL(2,ℤ) φ₂ ≡ 0 and the integral vanishes; the Λ factors and
//! brackets are still computed so they can be inspected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::integrate_fallible;
use crate::eisenstein::e1_fourier;
use crate::error::{Error, Result};
use crate::geometry::{y_pow, UnitTangentPoint};
use crate::modular::{phi_split_truncated, TruncationPolicy};
use crate::numerics::{gamma, hyp1f2_counted, quad_finite, rgamma, QuadResult, QuadratureSpec, POLE_TOLERANCE};

/// Endpoints y₁ ≤ y₂ on the imaginary axis. Equal endpoints give the empty
/// segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSegment {
    y1: f64,
    y2: f64,
}

impl GeodesicSegment {
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        if !(y1 > 0.0 && y2.is_finite() && y1 <= y2) {
            return Err(Error::Domain(format!("need 0 < y1 <= y2, got y1 = {y1}, y2 = {y2}")));
        }
        Ok(Self { y1, y2 })
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }
}

fn tan_pi(s: Complex64) -> Result<Complex64> {
    let c = (PI * s).cos();
    if c.norm() < POLE_TOLERANCE {
        return Err(Error::Pole { function: "tan(pi s)", at: s });
    }
    Ok((PI * s).sin() / c)
}

/// Λ₁(s) = 2^s π^{s−½} tan(πs) Γ(−s−1) / ((2−s) Γ(½−s)).
pub fn lambda1(s: Complex64) -> Result<Complex64> {
    if (s - 2.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole { function: "lambda1", at: s });
    }
    let pow = (s * 2f64.ln() + (s - 0.5) * PI.ln()).exp();
    if (PI * s).cos().norm() < POLE_TOLERANCE {
        // removable: tan(πs) and Γ(½−s) have poles together at half-integers
        return Ok(pow * gamma(s + 0.5)? * rgamma(s + 2.0) / (2.0 - s));
    }
    Ok(pow * tan_pi(s)? * gamma(-s - 1.0)? * rgamma(0.5 - s) / (2.0 - s))
}

/// Λ₂(s) = 2^{−s−1} π^{s−½} tan(πs) Γ(−s−1) / ((s+3) Γ(s+3/2)).
pub fn lambda2(s: Complex64) -> Result<Complex64> {
    if (s + 3.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole { function: "lambda2", at: s });
    }
    let pow = ((-s - 1.0) * 2f64.ln() + (s - 0.5) * PI.ln()).exp();
    Ok(pow * tan_pi(s)? * gamma(-s - 1.0)? * rgamma(s + 1.5) / (s + 3.0))
}

/// The two antiderivatives (y^{2−s} ₁F₂(…), y^{s+3} ₁F₂(…)) at y, with the
/// total number of series terms used.
pub fn geodesic_boundary_terms(y: f64, s: Complex64) -> Result<(Complex64, Complex64, usize)> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("boundary term needs y > 0, got {y}")));
    }
    let z = Complex64::new(y * y / 4.0, 0.0);
    let f1 = hyp1f2_counted((2.0 - s) / 2.0, (1.0 - 2.0 * s) / 2.0, (4.0 - s) / 2.0, z)?;
    let f2 = hyp1f2_counted((s + 3.0) / 2.0, (2.0 * s + 3.0) / 2.0, (s + 5.0) / 2.0, z)?;
    Ok((y_pow(y, 2.0 - s) * f1.value, y_pow(y, s + 3.0) * f2.value, f1.terms + f2.terms))
}

/// Every factor of the closed form, for inspection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicComponents {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// S(s) = Σ_{n ≤ n_max} n^{s−1} φ₂(n, s).
    pub phi2_sum: Complex64,
    /// [y^{2−s} ₁F₂(…)] from y₁ to y₂.
    pub bracket1: Complex64,
    /// [y^{s+3} ₁F₂(…)] from y₁ to y₂.
    pub bracket2: Complex64,
    pub hypergeometric_terms: usize,
    pub value: Complex64,
}

/// Evaluates the closed form. Outside 1 < Re s < 2 the display is not
/// justified; `enforce_strip = false` evaluates it anyway.
///
/// φ₂ comes from the truncated split Dirichlet series, whose c-tail bound
/// decays only like c_max^{1−2 Re s} in the strip; at desk-scale c_max the
/// policy's `max_rel_tail` has to be loosened to about 1e-3.
pub fn geodesic_components(
    seg: &GeodesicSegment,
    s: Complex64,
    policy: &TruncationPolicy,
    enforce_strip: bool,
) -> Result<GeodesicComponents> {
    if enforce_strip && !(s.re > 1.0 && s.re < 2.0) {
        return Err(Error::Domain(format!("geodesic closed form needs 1 < Re s < 2, got {s}")));
    }
    policy.validate()?;
    let l1 = lambda1(s)?;
    let l2 = lambda2(s)?;

    let mut phi2_sum = Complex64::new(0.0, 0.0);
    for n in 1..=policy.n_max as i64 {
        let (_, phi2) = phi_split_truncated(n, s, policy)?;
        phi2_sum += ((s - 1.0) * (n as f64).ln()).exp() * phi2;
    }

    let (b1_hi, b2_hi, t_hi) = geodesic_boundary_terms(seg.y2, s)?;
    let (b1_lo, b2_lo, t_lo) = geodesic_boundary_terms(seg.y1, s)?;
    let bracket1 = b1_hi - b1_lo;
    let bracket2 = b2_hi - b2_lo;
    let value = l1 * phi2_sum * bracket1 - l2 * phi2_sum * bracket2;
    Ok(GeodesicComponents {
        lambda1: l1,
        lambda2: l2,
        phi2_sum,
        bracket1,
        bracket2,
        hypergeometric_terms: t_hi + t_lo,
        value,
    })
}

/// The closed form inside its strip 1 < Re s < 2.
pub fn geodesic_integral_closed(seg: &GeodesicSegment, s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(geodesic_components(seg, s, policy, true)?.value)
}

/// ∫_{y₁}^{y₂} E¹((iy, 0), s) dy by tanh-sinh over the Fourier evaluator.
pub fn geodesic_quadrature(
    seg: &GeodesicSegment,
    s: Complex64,
    policy: &TruncationPolicy,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    integrate_fallible(
        |y| {
            let p = UnitTangentPoint::new(Complex64::new(0.0, y), 0.0)?;
            Ok(e1_fourier(&p, s, policy)?.value)
        },
        |f| quad_finite(f, seg.y1, seg.y2, spec),
    )
}
