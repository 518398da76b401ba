//! Numerical evaluation of the Eisenstein series of 1-forms E¹ on the unit
//! tangent bundle of the modular surface SL(2,ℤ)\ℍ.
//!
//! Two independent routes are provided — direct coset summation and the
//! Fourier expansion — together with certifiers for the horocycle, geodesic
//! and Rankin–Selberg integrals and for the Hodge Laplacian on 1-forms.
//!
//! ```
//! use hyperform_core::{e1_direct, e1_fourier, Complex64, TruncationPolicy, UnitTangentPoint};
//!
//! let p = UnitTangentPoint::new(Complex64::new(0.1, 1.2), std::f64::consts::FRAC_PI_3).unwrap();
//! let s = Complex64::new(2.5, 0.0);
//! let policy = TruncationPolicy { c_max: 300, ..TruncationPolicy::default() };
//! let direct = e1_direct(&p, s, &policy).unwrap();
//! let fourier = e1_fourier(&p, s, &policy).unwrap();
//! assert!((direct.value - fourier.value).norm() < 1e-6 * direct.value.norm());
//! ```

// `!(x > 0.0)` guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eisenstein;
pub mod error;
pub mod geometry;
pub mod hodge;
pub mod integrals;
pub mod modular;
pub mod numerics;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use eisenstein::{
    classical_direct, classical_fourier, e1_direct, e1_fourier, residue_at_one, zero_coefficient,
    zero_coefficient_reconciled, SeriesResult, ZeroCoefficient,
};
pub use geometry::{MoebiusMatrix, TangentVector, UnitTangentPoint};
pub use modular::{CosetRep, TruncationPolicy};
pub use numerics::{QuadResult, QuadratureSpec};
