//! Upper half-plane, the Möbius action on ℍ and on its unit tangent bundle,
//! and the seed 1-form α¹ = y^s dx.
//!
//! A unit tangent vector at z is stored as an angle θ measured from the
//! vertical: v_z(θ) = Im(z)·(−sin θ, cos θ). Under g ∈ SL(2,ℝ) the angle moves
//! to θ − 2 arg(cz+d) with arg in (−π, π].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

const DET_TOLERANCE: f64 = 1e-12;

/// Real 2×2 matrix of determinant one, acting by fractional linear maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MoebiusMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det - 1.0).is_finite() || (det - 1.0).abs() > DET_TOLERANCE {
            return Err(Error::domain(format!("determinant {det} is not 1")));
        }
        Ok(Self { a, b, c, d })
    }

    /// Skips the determinant check; for products of already-validated matrices.
    pub(crate) const fn new_unchecked(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new_unchecked(1.0, 0.0, 0.0, 1.0)
    }

    /// T^t: z ↦ z + t.
    pub const fn translation(t: f64) -> Self {
        Self::new_unchecked(1.0, t, 0.0, 1.0)
    }

    /// S: z ↦ −1/z.
    pub const fn inversion() -> Self {
        Self::new_unchecked(0.0, -1.0, 1.0, 0.0)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        Self::new_unchecked(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.d, -self.b, -self.c, self.a)
    }

    /// cz + d, the automorphy factor.
    pub fn cz_plus_d(&self, z: Complex64) -> Complex64 {
        self.c * z + self.d
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        moebius_apply(self, z)
    }
}

impl std::ops::Mul for MoebiusMatrix {
    type Output = MoebiusMatrix;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

fn check_upper(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("{z} is not in the upper half-plane")));
    }
    Ok(())
}

/// Angle reduced to [0, 2π).
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A point (z, θ) of the unit tangent bundle Sℍ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitTangentPoint {
    z: Complex64,
    theta: f64,
}

impl UnitTangentPoint {
    /// θ is reduced to [0, 2π).
    pub fn new(z: Complex64, theta: f64) -> Result<Self> {
        check_upper(z)?;
        if !theta.is_finite() {
            return Err(Error::domain("angle must be finite"));
        }
        Ok(Self { z, theta: normalize_angle(theta) })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
    pub fn x(&self) -> f64 {
        self.z.re
    }
    pub fn y(&self) -> f64 {
        self.z.im
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Euclidean components of v_z(θ) = Im(z)·(−sin θ, cos θ).
    pub fn tangent(&self) -> TangentVector {
        let y = self.z.im;
        TangentVector {
            z: self.z,
            v: Complex64::new(-y * self.theta.sin(), y * self.theta.cos()),
        }
    }
}

/// Tangent vector at z with Euclidean components v = (v.re, v.im).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub z: Complex64,
    pub v: Complex64,
}

impl TangentVector {
    /// Length in the metric (dx² + dy²)/y².
    pub fn hyperbolic_norm(&self) -> f64 {
        self.v.norm() / self.z.im
    }

    /// Push-forward by g: v ↦ g'(z)·v = v/(cz+d)².
    pub fn push_forward(&self, g: &MoebiusMatrix) -> Result<TangentVector> {
        let w = g.cz_plus_d(self.z);
        Ok(TangentVector { z: moebius_apply(g, self.z)?, v: self.v / (w * w) })
    }
}

/// (az+b)/(cz+d).
pub fn moebius_apply(g: &MoebiusMatrix, z: Complex64) -> Result<Complex64> {
    check_upper(z)?;
    Ok((g.a * z + g.b) / (g.c * z + g.d))
}

/// g·(z, θ) = (g z, θ − 2 arg(cz+d)).
pub fn ut_action(g: &MoebiusMatrix, p: &UnitTangentPoint) -> UnitTangentPoint {
    let w = g.cz_plus_d(p.z);
    let z = (g.a * p.z + g.b) / w;
    // Im(gz) = Im z/|cz+d|², computed directly to keep it positive.
    let z = Complex64::new(z.re, p.z.im / w.norm_sqr());
    UnitTangentPoint { z, theta: normalize_angle(p.theta - 2.0 * w.arg()) }
}

/// α¹(z, v_z(θ)) = Im(z)^s dx(v_z) = −Im(z)^{s+1} sin θ.
pub fn alpha1(p: &UnitTangentPoint, s: Complex64) -> Complex64 {
    -y_pow(p.z.im, s + 1.0) * p.theta.sin()
}

/// α¹(g(z, θ)) from the closed form −y^{s+1}|cz+d|^{−2s−2} sin(θ − 2 arg(cz+d)),
/// without composing through [`ut_action`].
pub fn alpha1_pullback(g: &MoebiusMatrix, p: &UnitTangentPoint, s: Complex64) -> Complex64 {
    let w = g.cz_plus_d(p.z);
    let y = p.z.im;
    let mag = ((s + 1.0) * (y.ln() - w.norm_sqr().ln())).exp();
    -mag * (p.theta - 2.0 * w.arg()).sin()
}

/// y^s for y > 0.
#[inline]
pub(crate) fn y_pow(y: f64, s: Complex64) -> Complex64 {
    (s * y.ln()).exp()
}

/// Iwasawa factors (n(x), a(y), k(θ)) with
/// n(x) = [[1, x], [0, 1]], a(y) = diag(√y, 1/√y), k(θ) = [[cos θ, sin θ], [−sin θ, cos θ]].
///
/// k(θ) fixes i and turns the vertical vector by 2θ (SO(2) covers the circle
/// twice), so n(x)a(y)k(θ/2) carries (i, 0) to (x+iy, θ).
pub fn iwasawa(p: &UnitTangentPoint) -> (MoebiusMatrix, MoebiusMatrix, MoebiusMatrix) {
    let r = p.z.im.sqrt();
    let (sn, cs) = p.theta.sin_cos();
    (
        MoebiusMatrix::translation(p.z.re),
        MoebiusMatrix::new_unchecked(r, 0.0, 0.0, 1.0 / r),
        MoebiusMatrix::new_unchecked(cs, sn, -sn, cs),
    )
}

/// Signed angular distance a − b wrapped into (−π, π].
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}
