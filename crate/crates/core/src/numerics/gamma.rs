//! Complex gamma function: Lanczos approximation (g = 7, nine coefficients)
//! with the reflection formula on the left half-plane.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Distance below which `s` is treated as sitting on a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Returns the non-positive integer `s` lies on, if any.
pub fn nonpositive_integer(s: Complex64) -> Option<i64> {
    let n = s.re.round();
    if n <= 0.0 && (s - Complex64::new(n, 0.0)).norm() < POLE_TOLERANCE {
        Some(n as i64)
    } else {
        None
    }
}

/// log Γ(s) for Re s ≥ 1/2 (branch of the Lanczos formula, not principal).
fn lanczos_ln(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut a = Complex64::new(LANCZOS_P[0], 0.0);
    for (k, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        a += p / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// Γ(s).
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(s).is_some() {
        return Err(Error::Pole { function: "gamma", at: s });
    }
    if s.re < 0.5 {
        let sin = (PI * s).sin();
        Ok(PI / (sin * lanczos_ln(1.0 - s).exp()))
    } else {
        Ok(lanczos_ln(s).exp())
    }
}

/// 1/Γ(s), an entire function (exactly zero at the poles of Γ).
pub fn rgamma(s: Complex64) -> Complex64 {
    if nonpositive_integer(s).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    if s.re < 0.5 {
        (PI * s).sin() * lanczos_ln(1.0 - s).exp() / PI
    } else {
        (-lanczos_ln(s)).exp()
    }
}

/// Real-argument convenience wrapper.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}
