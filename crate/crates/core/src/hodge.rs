//! The Hodge Laplacian on 1-forms of ℍ, by finite differences.
//!
//! For w = w₁ dx + w₂ dy,
//!
//! (Δ¹w)₁ = −y² ∂²ₓw₁ − y² ∂²_y w₁ + 2y ∂ₓw₂ − 2y ∂_y w₁
//! (Δ¹w)₂ = −y² ∂²ₓw₂ − y² ∂²_y w₂ − 2y ∂ₓw₁ − 2y ∂_y w₂
//!
//! and y^s dx is an eigenform with eigenvalue −s(s+1). The same operator is
//! also assembled independently through the Weitzenbock formula
//! Δ¹ = ∇*∇ + Ric with Ric = −g, from the Christoffel symbols.
//!
//! Sign conventions differ between degrees: [`laplacian0`] is −y²(∂²ₓ + ∂²_y),
//! under which y^s has eigenvalue s(1−s), while Δ¹(y^s dx) = −s(s+1) y^s dx.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::y_pow;

type Component = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A 1-form w₁ dx + w₂ dy on ℍ given by its two component functions.
pub struct OneFormField {
    w1: Component,
    w2: Component,
}

impl OneFormField {
    pub fn new<F, G>(w1: F, w2: G) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        G: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self { w1: Box::new(w1), w2: Box::new(w2) }
    }

    /// y^s dx.
    pub fn eigenform(s: Complex64) -> Self {
        Self::new(move |z: Complex64| y_pow(z.im, s), |_| Complex64::new(0.0, 0.0))
    }

    /// y^s dx + y^s dy.
    pub fn diagonal_eigenform(s: Complex64) -> Self {
        Self::new(move |z: Complex64| y_pow(z.im, s), move |z: Complex64| y_pow(z.im, s))
    }

    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        ((self.w1)(z), (self.w2)(z))
    }
}

/// Step size and accuracy order of the central stencils.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StencilSpec {
    pub h: f64,
    pub order: u8,
}

impl Default for StencilSpec {
    fn default() -> Self {
        Self { h: 1e-3, order: 2 }
    }
}

impl StencilSpec {
    pub fn new(h: f64, order: u8) -> Result<Self> {
        let spec = Self { h, order };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Domain(format!("stencil step must be positive, got {}", self.h)));
        }
        if self.order != 2 && self.order != 4 {
            return Err(Error::Domain(format!("stencil order must be 2 or 4, got {}", self.order)));
        }
        Ok(())
    }

    fn check_point(&self, z: Complex64) -> Result<()> {
        self.validate()?;
        if !(z.im > 4.0 * self.h) {
            return Err(Error::Domain(format!("stencil of step {} leaves the half-plane at {z}", self.h)));
        }
        Ok(())
    }
}

/// Value and first/second partials of one component.
#[derive(Debug, Clone, Copy)]
struct Jet {
    v: Complex64,
    dx: Complex64,
    dy: Complex64,
    dxx: Complex64,
    dyy: Complex64,
}

/// (f', f'') along a line through f(0) with samples at ±h, ±2h.
fn central(f: &dyn Fn(f64) -> Complex64, v: Complex64, h: f64, order: u8) -> (Complex64, Complex64) {
    let (p1, m1) = (f(h), f(-h));
    if order == 2 {
        return ((p1 - m1) / (2.0 * h), (p1 - 2.0 * v + m1) / (h * h));
    }
    let (p2, m2) = (f(2.0 * h), f(-2.0 * h));
    let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2 = (-p2 + 16.0 * p1 - 30.0 * v + 16.0 * m1 - m2) / (12.0 * h * h);
    (d1, d2)
}

fn jet(f: &Component, z: Complex64, spec: &StencilSpec) -> Jet {
    let v = f(z);
    let (dx, dxx) = central(&|t| f(z + t), v, spec.h, spec.order);
    let (dy, dyy) = central(&|t| f(z + Complex64::new(0.0, t)), v, spec.h, spec.order);
    Jet { v, dx, dy, dxx, dyy }
}

/// Δ¹w at z, both components.
pub fn laplacian1(w: &OneFormField, z: Complex64, spec: &StencilSpec) -> Result<(Complex64, Complex64)> {
    spec.check_point(z)?;
    let a = jet(&w.w1, z, spec);
    let b = jet(&w.w2, z, spec);
    let y = z.im;
    let y2 = y * y;
    let first = -y2 * a.dxx - y2 * a.dyy + 2.0 * y * b.dx - 2.0 * y * a.dy;
    let second = -y2 * b.dxx - y2 * b.dyy - 2.0 * y * a.dx - 2.0 * y * b.dy;
    Ok((first, second))
}

/// Δ⁰f = −y²(∂²ₓ + ∂²_y) f.
pub fn laplacian0<F>(f: F, z: Complex64, spec: &StencilSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    spec.check_point(z)?;
    let boxed: Component = Box::new(f);
    let j = jet(&boxed, z, spec);
    Ok(-z.im * z.im * (j.dxx + j.dyy))
}

/// Γᵏᵢⱼ as a multiple of 1/y (indices 1 = x, 2 = y).
pub fn christoffel(i: usize, j: usize, k: usize) -> Result<i32> {
    if ![i, j, k].iter().all(|&n| n == 1 || n == 2) {
        return Err(Error::Domain(format!("Christoffel indices must be 1 or 2, got ({i}, {j}, {k})")));
    }
    Ok(match (i, j, k) {
        (1, 2, 1) | (2, 1, 1) | (2, 2, 2) => -1,
        (1, 1, 2) => 1,
        _ => 0,
    })
}

fn gamma_sym(i: usize, j: usize, k: usize, y: f64) -> f64 {
    christoffel(i, j, k).map_or(0.0, |c| c as f64 / y)
}

/// ∂_m Γᵏᵢⱼ; only ∂_y is non-zero.
fn gamma_derivative(m: usize, i: usize, j: usize, k: usize, y: f64) -> f64 {
    if m == 2 {
        -gamma_sym(i, j, k, y) / y
    } else {
        0.0
    }
}

/// (∇_m ∇_n w)_t for m = n, from the Christoffel symbols.
fn second_covariant(jets: &[Jet; 2], n: usize, y: f64) -> [Complex64; 2] {
    let m = n;
    let d = |j: &Jet, dir: usize| if dir == 1 { j.dx } else { j.dy };
    let dd = |j: &Jet, dir: usize| if dir == 1 { j.dxx } else { j.dyy };
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for t in 1..=2 {
        let mut acc = dd(&jets[t - 1], n);
        for r in 1..=2 {
            let wr = &jets[r - 1];
            acc -= d(wr, n) * gamma_sym(m, t, r, y);
            acc -= d(wr, m) * gamma_sym(n, t, r, y);
            acc -= wr.v * gamma_derivative(m, n, t, r, y);
            for k in 1..=2 {
                acc += wr.v * gamma_sym(n, k, r, y) * gamma_sym(m, t, k, y);
            }
        }
        out[t - 1] = acc;
    }
    out
}

/// First covariant derivative (∇_n w)_t.
fn first_covariant(jets: &[Jet; 2], n: usize, y: f64) -> [Complex64; 2] {
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for t in 1..=2 {
        let j = &jets[t - 1];
        let mut acc = if n == 1 { j.dx } else { j.dy };
        for r in 1..=2 {
            acc -= jets[r - 1].v * gamma_sym(n, t, r, y);
        }
        out[t - 1] = acc;
    }
    out
}

/// Δ¹w through ∇*∇w − w, with the Bochner Laplacian
/// −Σ g^{kk} ∇_k∇_k − Σ |g|^{−½} ∂_k(|g|^{½} g^{kk}) ∇_k for g = (dx² + dy²)/y².
pub fn laplacian1_weitzenbock(w: &OneFormField, z: Complex64, spec: &StencilSpec) -> Result<(Complex64, Complex64)> {
    spec.check_point(z)?;
    let jets = [jet(&w.w1, z, spec), jet(&w.w2, z, spec)];
    let y = z.im;
    let g_inv = |_k: usize, y: f64| y * y;
    let sqrt_det = |y: f64| 1.0 / (y * y);
    let density = |k: usize, y: f64| sqrt_det(y) * g_inv(k, y);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for k in 1..=2 {
        let nn = second_covariant(&jets, k, y);
        // ∂_k of the density; it depends on y only
        let drift = if k == 2 {
            let h = spec.h;
            (density(k, y + h) - density(k, y - h)) / (2.0 * h) / sqrt_det(y)
        } else {
            0.0
        };
        let n1 = first_covariant(&jets, k, y);
        for t in 0..2 {
            out[t] -= g_inv(k, y) * nn[t] + drift * n1[t];
        }
    }
    // Ric(w♯, ·) = −w
    Ok((out[0] - jets[0].v, out[1] - jets[1].v))
}

/// max_t |(Δ¹w)_t − (∇*∇w − w)_t|.
pub fn weitzenbock_check(w: &OneFormField, z: Complex64, spec: &StencilSpec) -> Result<f64> {
    let (a1, a2) = laplacian1(w, z, spec)?;
    let (b1, b2) = laplacian1_weitzenbock(w, z, spec)?;
    Ok((a1 - b1).norm().max((a2 - b2).norm()))
}

/// ‖Δ¹w − λw‖/‖λw‖, or the absolute residual when λw vanishes.
pub fn eigen_residual_field(w: &OneFormField, lambda: Complex64, z: Complex64, spec: &StencilSpec) -> Result<f64> {
    let (l1, l2) = laplacian1(w, z, spec)?;
    let (w1, w2) = w.eval(z);
    let r = ((l1 - lambda * w1).norm_sqr() + (l2 - lambda * w2).norm_sqr()).sqrt();
    let scale = ((lambda * w1).norm_sqr() + (lambda * w2).norm_sqr()).sqrt();
    Ok(if scale > 1e-14 { r / scale } else { r })
}

/// Residual of Δ¹(y^s dx) = −s(s+1) y^s dx.
pub fn eigen_residual(s: Complex64, z: Complex64, spec: &StencilSpec) -> Result<f64> {
    eigen_residual_field(&OneFormField::eigenform(s), -s * (s + 1.0), z, spec)
}

/// Least-squares slope of log(residual) against log(h).
pub fn eigen_convergence_order(s: Complex64, z: Complex64, order: u8, steps: &[f64]) -> Result<f64> {
    if steps.len() < 2 {
        return Err(Error::domain("need at least two step sizes"));
    }
    let mut pts = Vec::with_capacity(steps.len());
    for &h in steps {
        let r = eigen_residual(s, z, &StencilSpec::new(h, order)?)?;
        if !(r > 0.0) {
            return Err(Error::Domain(format!("residual vanished at h = {h}; order is not measurable")));
        }
        pts.push((h.ln(), r.ln()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}
