//! q-expansions of the normalised holomorphic Eisenstein series
//! E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prefix a₀..a_N of the q-expansion f(z) = Σ aₙ e(nz) of a weight-k form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularFormCoefficients {
    weight: u32,
    a: Vec<Complex64>,
}

impl ModularFormCoefficients {
    pub fn new(weight: u32, a: Vec<Complex64>) -> Result<Self> {
        if weight < 4 || !weight.is_multiple_of(2) {
            return Err(Error::Domain(format!("weight must be even and >= 4, got {weight}")));
        }
        if a.is_empty() {
            return Err(Error::domain("need at least the coefficient a0"));
        }
        Ok(Self { weight, a })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.a
    }

    /// Σ_{n ≤ N} aₙ e(nz).
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let q = (Complex64::new(0.0, std::f64::consts::TAU) * z).exp();
        // Horner in q
        self.a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * q + a)
    }
}

/// Bernoulli number B_m (B₁ = −½), exactly.
pub fn bernoulli(m: usize) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        if k == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Σ_{j<k+1} C(k+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b.pop().unwrap_or_else(BigRational::one)
}

fn sigma_exact(n: u64, power: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(power);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(power);
            }
        }
        d += 1;
    }
    total
}

/// a₀ = 1, aₙ = −(2k/B_k) σ_{k−1}(n) for n = 1..=N.
pub fn eisenstein_qexpansion(k: u32, n_terms: usize) -> Result<ModularFormCoefficients> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::Domain(format!("weight must be even and >= 4, got {k}")));
    }
    if n_terms < 1 {
        return Err(Error::domain("need N >= 1"));
    }
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    let mut a = Vec::with_capacity(n_terms + 1);
    a.push(Complex64::new(1.0, 0.0));
    for n in 1..=n_terms as u64 {
        let exact = &factor * BigRational::from_integer(sigma_exact(n, k - 1));
        let v = exact.to_f64().ok_or_else(|| Error::domain("coefficient not representable"))?;
        a.push(Complex64::new(v, 0.0));
    }
    ModularFormCoefficients::new(k, a)
}
