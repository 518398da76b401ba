//! The classical Eisenstein series E(z, s) and the 1-form series E¹ for
//! SL(2,ℤ), each by direct coset summation and by Fourier expansion, plus the
//! zero Fourier coefficient of E¹ and its residue at s = 1.

mod classical;
mod cosets;
mod e1;
mod zero_mode;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use classical::{classical_direct, classical_fourier};
pub use e1::{
    e1_direct, e1_fourier, e1_term_groups, e1_term_groups_with, E1TermGroups, DIRICHLET_SHIFT,
    SIGN_LEDGER,
};
pub use zero_mode::{
    residue_at_one, zero_coefficient, zero_coefficient_reconciled, ZeroCoefficient,
    RESIDUE_EPSILONS,
};

/// Smallest Im z accepted by the Fourier evaluators.
pub const FOURIER_MIN_Y: f64 = 0.3;

/// Value of a truncated series with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub terms_used: u64,
}

pub(crate) fn require_convergent_s(s: Complex64) -> crate::Result<()> {
    if !(s.re > 1.0) || !s.im.is_finite() {
        return Err(crate::Error::Domain(format!("series needs Re s > 1, got {s}")));
    }
    Ok(())
}

pub(crate) fn require_fourier_band(y: f64) -> crate::Result<()> {
    if !(y >= FOURIER_MIN_Y) {
        return Err(crate::Error::Domain(format!(
            "Fourier evaluation needs Im z >= {FOURIER_MIN_Y}, got {y}"
        )));
    }
    Ok(())
}

/// Tail of the mode sum after the last computed term of magnitude `last`
/// (mode `n`), assuming decay like n^{order} e^{−2πny}.
pub(crate) fn mode_tail(last: f64, n: u32, y: f64, order: f64) -> f64 {
    let nf = n as f64;
    let r = (-2.0 * std::f64::consts::PI * y).exp() * ((nf + 1.0) / nf).powf(order.max(0.0));
    let r = r.min(0.5);
    last * r / (1.0 - r)
}
