//! Generalised hypergeometric ₁F₂ by direct term recurrence (entire in z).

use num_complex::Complex64;

use super::gamma::nonpositive_integer;
use super::KahanSum;
use crate::error::{Error, Result};

/// Term budget before giving up.
pub const MAX_TERMS: usize = 20_000;
const REL_TOL: f64 = 0.25 * f64::EPSILON;

/// Value and number of series terms consumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp1F2 {
    pub value: Complex64,
    pub terms: usize,
}

/// ₁F₂(a; b, c; z) = Σ (a)_n / ((b)_n (c)_n) zⁿ/n!.
pub fn hyp1f2(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    hyp1f2_counted(a, b, c, z).map(|r| r.value)
}

/// As [`hyp1f2`] but also reports the number of terms summed.
pub fn hyp1f2_counted(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Hyp1F2> {
    for p in [b, c] {
        if nonpositive_integer(p).is_some() {
            return Err(Error::Pole { function: "hyp1f2", at: p });
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = KahanSum::new();
    acc.add(term);
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / ((b + nf) * (c + nf)) * z / (nf + 1.0);
        acc.add(term);
        let sum = acc.value();
        // Terms may still grow until n passes |z|^{1/2}-ish; only count
        // smallness once the ratio has dropped below one.
        let ratio = ((a + nf + 1.0) / ((b + nf + 1.0) * (c + nf + 1.0)) * z / (nf + 2.0)).norm();
        if term.norm() <= REL_TOL * sum.norm() && ratio < 1.0 {
            small_run += 1;
            if small_run >= 3 {
                return Ok(Hyp1F2 { value: sum, terms: n + 2 });
            }
        } else {
            small_run = 0;
        }
        if term == Complex64::new(0.0, 0.0) {
            return Ok(Hyp1F2 { value: sum, terms: n + 2 });
        }
    }
    Err(Error::Convergence {
        what: "hyp1f2 series",
        best: acc.value(),
        estimate: term.norm(),
    })
}

/// ₀F₁(; c; z), the a = b specialisation of ₁F₂.
pub fn hyp0f1(c: Complex64, z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    hyp1f2(one, one, c, z)
}
