//! Special functions, arithmetic helpers and quadrature used by every other
//! module. Everything here is a pure function of its arguments.

mod arith;
mod bessel;
mod gamma;
mod hurwitz;
mod hypergeometric;
mod quadrature;
mod summation;
mod zeta;

pub use arith::{
    divisor_sigma, euler_phi, ext_gcd, factorize, gcd, mobius, squarefree_divisors, MAX_SIGMA_ARG,
};
pub use bessel::{bessel_k, bessel_k_scaled, MAX_ORDER_RE};
pub use gamma::{gamma, gamma_real, nonpositive_integer, rgamma, POLE_TOLERANCE};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_ladder, hurwitz_zeta_ladder_scaled};
pub use hypergeometric::{hyp0f1, hyp1f2, hyp1f2_counted, Hyp1F2, MAX_TERMS as HYP_MAX_TERMS};
pub use quadrature::{
    quad_finite, quad_infinite, quad_periodic, quad_semiinfinite, QuadResult, QuadratureSpec,
    MAX_LEVELS as QUAD_MAX_LEVELS,
};
pub use summation::{kahan_sum, KahanSum};
pub use zeta::{eta, zeta, zeta_real};

use num_complex::Complex64;

/// e(z) = exp(2πiz) for real z.
#[inline]
pub fn e_real(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * x)
}
