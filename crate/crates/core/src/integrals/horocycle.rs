//! ∫ E¹ over the lift {(x + iy₀, θ) : 0 ≤ x ≤ 1} of a closed horocycle.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::integrate_fallible;
use crate::eisenstein::{e1_direct, zero_coefficient_reconciled};
use crate::error::{Error, Result};
use crate::geometry::{y_pow, UnitTangentPoint};
use crate::modular::{phi_closed, TruncationPolicy};
use crate::numerics::{gamma, quad_periodic, rgamma, QuadResult, QuadratureSpec};

/// The lift points along −∂/∂y, i.e. θ = −π/2.
pub const HOROCYCLE_ANGLE: f64 = 1.5 * PI;

fn check(y0: f64, s: Complex64) -> Result<()> {
    if !(y0 > 0.0) || !y0.is_finite() {
        return Err(Error::Domain(format!("horocycle height must be positive, got {y0}")));
    }
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("horocycle integral needs Re s > 1, got {s}")));
    }
    Ok(())
}

/// y₀^{s+1} − √π y₀^{−s}/(s+1) · Γ(s+½)/Γ(s) · ζ(2s+1)/ζ(2s+2): only the
/// constant Fourier mode survives the x-integration.
pub fn horocycle_integral_closed(y0: f64, s: Complex64) -> Result<Complex64> {
    check(y0, s)?;
    zero_coefficient_reconciled(y0, HOROCYCLE_ANGLE, s)
}

/// −y₀^{s+1} − √π y₀^{−s}/(s+1) · Γ(s+½)/Γ(s) · φ(s), the two-term form
/// with the leading sign and scattering term of the classical series. Kept
/// for comparison; it does not match the quadrature.
pub fn horocycle_integral_as_printed(y0: f64, s: Complex64) -> Result<Complex64> {
    check(y0, s)?;
    let second = PI.sqrt() * y_pow(y0, -s) / (s + 1.0) * gamma(s + 0.5)? * rgamma(s) * phi_closed(s)?;
    Ok(-y_pow(y0, s + 1.0) - second)
}

/// Trapezoid quadrature in x of the direct coset sum along the lift.
pub fn horocycle_quadrature(
    y0: f64,
    s: Complex64,
    policy: &TruncationPolicy,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    check(y0, s)?;
    integrate_fallible(
        |x| {
            let p = UnitTangentPoint::new(Complex64::new(x, y0), HOROCYCLE_ANGLE)?;
            Ok(e1_direct(&p, s, policy)?.value)
        },
        |f| quad_periodic(f, 0.0, 1.0, spec),
    )
}
