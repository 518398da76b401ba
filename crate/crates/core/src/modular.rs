//! Arithmetic of Γ = SL(2,ℤ): coset representatives of Γ_∞\Γ, Ramanujan sums,
//! the Dirichlet series attached to the cusp ∞, and reduction to the standard
//! fundamental domain.
//!
//! Cosets are counted projectively: one representative per ±(c, d), with
//! c > 0 or (c, d) = (0, 1).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{ut_action, MoebiusMatrix, UnitTangentPoint};
use crate::numerics::{divisor_sigma, ext_gcd, gamma, gcd, rgamma, zeta, KahanSum};

/// Bounds and tolerances for every truncated sum.
///
/// `c_max` bounds coset shells and Kloosterman-type c-sums, `n_max` the
/// Fourier modes. `series_tol` is the absolute cut for convergent series
/// (Fourier modes, hypergeometric tails); `max_rel_tail` is the largest
/// tail-to-value ratio accepted from a c-truncated sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub c_max: u32,
    pub n_max: u32,
    pub series_tol: f64,
    pub max_rel_tail: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { c_max: 2000, n_max: 30, series_tol: 1e-10, max_rel_tail: 1e-6 }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.c_max < 1 || self.n_max < 1 {
            return Err(Error::domain("c_max and n_max must be at least 1"));
        }
        if !(self.series_tol > 0.0) || !(self.max_rel_tail > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        Ok(())
    }
}

/// Representative of a coset Γ_∞γ, stored with its integer entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetRep {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl CosetRep {
    /// Completes the bottom row (c, d) to a matrix of determinant one.
    pub fn from_bottom_row(c: i64, d: i64) -> Result<Self> {
        if c < 0 || (c == 0 && d != 1) {
            return Err(Error::domain(format!("({c}, {d}) is not a normalised bottom row")));
        }
        let (g, x, y) = ext_gcd(d, -c);
        if g != 1 {
            return Err(Error::domain(format!("gcd({c}, {d}) = {g}")));
        }
        Ok(Self { a: x, b: y, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn matrix(&self) -> MoebiusMatrix {
        MoebiusMatrix::new_unchecked(self.a as f64, self.b as f64, self.c as f64, self.d as f64)
    }
}

/// All representatives with 0 ≤ c ≤ `bound` and |d| ≤ `d_bound`
/// (plus the identity coset), ordered by c then d.
pub fn enumerate_cosets(bound: u32, d_bound: u64) -> Vec<CosetRep> {
    let mut out = vec![CosetRep::identity()];
    let db = d_bound as i64;
    for c in 1..=bound as i64 {
        for d in -db..=db {
            if gcd(c, d) == 1 {
                out.push(CosetRep::from_bottom_row(c, d).expect("coprime row"));
            }
        }
    }
    out
}

/// Ramanujan sum c_c(n) = Σ_{d mod c, (d,c)=1} e(nd/c) = Σ_{e | (c,n)} e μ(c/e).
pub fn ramanujan_sum(c: u64, n: i64) -> i64 {
    assert!(c >= 1, "ramanujan_sum needs c >= 1");
    let g = gcd(c as i64, n) as u64;
    let mut total = 0i64;
    for e in 1..=g {
        if g.is_multiple_of(e) {
            total += e as i64 * crate::numerics::mobius(c / e);
        }
    }
    total
}

/// Σ_{c≥1} φ_Euler(c) c^{−2s} = ζ(2s−1)/ζ(2s).
pub fn dirichlet_zero(s: Complex64) -> Result<Complex64> {
    Ok(zeta(2.0 * s - 1.0)? / zeta(2.0 * s)?)
}

/// φ(s) = √π Γ(s−½)/Γ(s) · ζ(2s−1)/ζ(2s).
pub fn phi_closed(s: Complex64) -> Result<Complex64> {
    let g = gamma(s - 0.5)? * rgamma(s);
    Ok(PI.sqrt() * g * dirichlet_zero(s)?)
}

/// φ(n, s) = σ_{1−2s}(|n|)/ζ(2s).
pub fn phi_n_closed(n: i64, s: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("phi_n_closed needs n != 0"));
    }
    Ok(divisor_sigma(n.abs(), 1.0 - 2.0 * s)? / zeta(2.0 * s)?)
}

/// (φ₁, φ₂) = Σ_{c ≤ c_max} c^{−2s} Σ_{d mod c, (d,c)=1} (cos, sin)(2πnd/c).
pub fn phi_split_truncated(
    n: i64,
    s: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, Complex64)> {
    policy.validate()?;
    if n < 1 {
        return Err(Error::domain(format!("phi_split_truncated needs n >= 1, got {n}")));
    }
    if !(s.re > 0.5) {
        return Err(Error::domain("phi_split_truncated needs Re s > 1/2"));
    }
    let mut cos_acc = KahanSum::new();
    let mut sin_acc = KahanSum::new();
    for c in 1..=policy.c_max as i64 {
        let weight = (-2.0 * s * (c as f64).ln()).exp();
        let (mut cs, mut sn) = (KahanSum::new(), KahanSum::new());
        for d in 0..c {
            if gcd(c, d) == 1 {
                // reduce n·d mod c exactly before forming the angle
                let r = ((n as i128 * d as i128) % c as i128) as f64;
                let (si, co) = (2.0 * PI * r / c as f64).sin_cos();
                cs.add(Complex64::new(co, 0.0));
                sn.add(Complex64::new(si, 0.0));
            }
        }
        cos_acc.add(weight * cs.value().re);
        sin_acc.add(weight * sn.value().re);
    }
    let phi1 = cos_acc.value();
    let phi2 = sin_acc.value();

    // Σ_{c>C} c^{−2σ}|c_c(n)| ≤ τ(n) C^{1−2σ}/(2σ−1)
    let sigma = s.re;
    let tau = (1..=n).filter(|d| n % d == 0).count() as f64;
    let tail = tau * (policy.c_max as f64).powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    let scale = phi1.norm() + phi2.norm();
    if tail > policy.max_rel_tail * scale {
        return Err(Error::Convergence {
            what: "phi_split_truncated",
            best: phi1 + Complex64::i() * phi2,
            estimate: tail,
        });
    }
    Ok((phi1, phi2))
}

/// Moves z into the standard fundamental domain |x| ≤ ½, |z| ≥ 1.
/// Returns the reduced point and the γ ∈ SL(2,ℤ) with γ·z = reduced.
pub fn reduce_point(z: Complex64) -> Result<(Complex64, MoebiusMatrix)> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("{z} is not in the upper half-plane")));
    }
    let mut g = MoebiusMatrix::identity();
    let mut w = z;
    for _ in 0..10_000 {
        let n = (w.re + 0.5).floor();
        if n != 0.0 {
            let t = MoebiusMatrix::translation(-n);
            w = Complex64::new(w.re - n, w.im);
            g = t * g;
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            let y = w.im / w.norm_sqr();
            w = Complex64::new(-w.re / w.norm_sqr(), y);
            g = MoebiusMatrix::inversion() * g;
        } else {
            return Ok((w, g));
        }
    }
    Err(Error::domain(format!("reduction of {z} did not terminate")))
}

/// Reduces the base point of p, carrying the angle along.
pub fn reduce_unit_tangent(p: &UnitTangentPoint) -> Result<(UnitTangentPoint, MoebiusMatrix)> {
    let (_, g) = reduce_point(p.z())?;
    Ok((ut_action(&g, p), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::euler_phi;
    use std::collections::HashSet;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coset_enumeration_examples() {
        let reps = enumerate_cosets(1, 5);
        assert_eq!(reps[0], CosetRep::identity());
        assert_eq!(reps.len(), 1 + 11);
        let reps = enumerate_cosets(2, 6);
        assert!(reps.iter().filter(|r| r.c == 2).all(|r| r.d % 2 != 0));
        let brute = 1 + (1..=10i64)
            .flat_map(|c| (-10..=10i64).map(move |d| (c, d)))
            .filter(|&(c, d)| gcd(c, d) == 1)
            .count();
        assert_eq!(enumerate_cosets(10, 10).len(), brute);
    }

    #[test]
    fn cosets_are_unique_and_unimodular() {
        let reps = enumerate_cosets(30, 40);
        let mut seen = HashSet::new();
        for r in &reps {
            assert_eq!(r.det(), 1);
            assert!(seen.insert((r.c, r.d)));
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(1, 17), 1);
        assert_eq!(ramanujan_sum(2, 1), -1);
        // d ∈ {1, 5}: e(4/6) + e(20/6) = 2 cos(4π/3) = −1
        assert_eq!(ramanujan_sum(6, 4), -1);
        assert_eq!(ramanujan_sum(12, 0), euler_phi(12) as i64);
    }

    #[test]
    fn phi_closed_composition() {
        let s = c(2.0, 0.0);
        let want = PI.sqrt() * (0.5 * PI.sqrt()) / 1.0 * zeta(c(3.0, 0.0)).unwrap().re
            / zeta(c(4.0, 0.0)).unwrap().re;
        assert!((phi_closed(s).unwrap().re - want).abs() < 1e-14);
        assert!((phi_closed(s).unwrap().re - 1.744_568_082_131_256).abs() < 1e-13);
    }

    #[test]
    fn dirichlet_zero_matches_truncated_sum() {
        let s = c(3.0, 0.0);
        let mut acc = KahanSum::new();
        for cc in 1..=2000u64 {
            acc.add(c(euler_phi(cc) as f64 * (cc as f64).powf(-6.0), 0.0));
        }
        let closed = dirichlet_zero(s).unwrap();
        assert!((acc.value() - closed).norm() / closed.norm() < 1e-6);
    }

    #[test]
    fn phi_pole_at_one_has_finite_residue() {
        // (s−1)φ(s) → √π Γ(1/2) · (1/2)/ζ(2) = 3/π
        let eps = 1e-7;
        let v = eps * phi_closed(c(1.0 + eps, 0.0)).unwrap().re;
        assert!((v - 3.0 / PI).abs() < 1e-5);
    }

    #[test]
    fn phi_n_examples() {
        let s = c(2.0, 0.0);
        let z4 = zeta(c(4.0, 0.0)).unwrap();
        assert!((phi_n_closed(1, s).unwrap() - 1.0 / z4).norm() < 1e-15);
        let want = (1.0 + 2f64.powi(-3) + 3f64.powi(-3) + 6f64.powi(-3)) / z4;
        assert!((phi_n_closed(6, s).unwrap() - want).norm() < 1e-15);
        assert_eq!(phi_n_closed(-6, s).unwrap(), phi_n_closed(6, s).unwrap());
        assert!(phi_n_closed(0, s).is_err());
    }

    #[test]
    fn phi_split_matches_closed_form() {
        let policy = TruncationPolicy { c_max: 400, ..Default::default() };
        let s = c(2.0, 0.0);
        let (p1, p2) = phi_split_truncated(1, s, &policy).unwrap();
        assert!(p2.norm() < 1e-12);
        assert!(p1.im == 0.0 && p2.im == 0.0);
        assert!((p1 - phi_n_closed(1, s).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn reduction_lands_in_fundamental_domain() {
        for &z in &[c(0.3, 0.01), c(-7.2, 0.4), c(0.5, 0.5), c(0.0, 3.0), c(11.9, 0.002)] {
            let (w, g) = reduce_point(z).unwrap();
            assert!(w.re >= -0.5 && w.re < 0.5);
            assert!(w.norm_sqr() >= 1.0 - 1e-12);
            let gz = g.apply(z).unwrap();
            assert!((gz - w).norm() < 1e-9 * (1.0 + w.norm()));
        }
    }
}
