//! Line integrals of E¹ and the auxiliary integral identities behind its
//! Fourier expansion, each with a closed form and an independent quadrature
//! oracle.

mod geodesic;
mod horocycle;
mod identities;
mod qexpansion;
mod rankin_selberg;

use num_complex::Complex64;
use std::cell::RefCell;

pub use geodesic::{
    geodesic_boundary_terms, geodesic_components, geodesic_integral_closed, geodesic_quadrature,
    lambda1, lambda2, GeodesicComponents, GeodesicSegment,
};
pub use horocycle::{
    horocycle_integral_as_printed, horocycle_integral_closed, horocycle_quadrature, HOROCYCLE_ANGLE,
};
pub use identities::{
    bessel_power_antiderivative, integral_identity_suite, IdentityCheck, IdentityReport,
    IDENTITY_TOLERANCE,
};
pub use qexpansion::{bernoulli, eisenstein_qexpansion, ModularFormCoefficients};
pub use rankin_selberg::{rankin_selberg_closed, rankin_selberg_lhs_oracle, RANKIN_SELBERG_TOL};

use crate::error::Result;
use crate::numerics::QuadResult;

/// Runs a quadrature over a fallible integrand; the first integrand error
/// aborts the result.
pub(crate) fn integrate_fallible<F, Q>(f: F, quad: Q) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
    Q: FnOnce(&dyn Fn(f64) -> Complex64) -> Result<QuadResult>,
{
    let failure = RefCell::new(None);
    let g = |t: f64| match f(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let r = quad(&g);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}
