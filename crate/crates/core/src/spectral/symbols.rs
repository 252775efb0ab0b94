//! Fourier symbols of the differential and singular integral operators.
//!
//! Singular symbols (negative powers of `|ξ⃗|`, Riesz transforms) evaluate to
//! `inf`/`NaN` at `ξ⃗ = 0`; [`super::ops::apply_symbol`] maps those to zero.

use num_complex::Complex;

use crate::scalar::Scalar;

#[inline]
fn re<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
fn im<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

pub fn identity<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |_, _| re(T::one())
}

/// `∂x ↔ iξ`
pub fn dx<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |xi, _| im(xi)
}

/// `∂y ↔ iη`
pub fn dy<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |_, eta| im(eta)
}

/// `∂xᵏ ↔ (iξ)ᵏ`
pub fn dx_pow<T: Scalar>(k: u32) -> impl Fn(T, T) -> Complex<T> {
    move |xi, _| im(xi).powu(k)
}

/// `Δ ↔ -|ξ⃗|²`
pub fn laplacian<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |xi, eta| re(-(xi * xi + eta * eta))
}

/// `Δ⁻¹ ↔ -1/|ξ⃗|²`
pub fn inv_laplacian<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |xi, eta| re(-T::one() / (xi * xi + eta * eta))
}

/// `|∇|^α ↔ |ξ⃗|^α` (any real α; negative α is singular at the origin).
pub fn abs_grad_pow<T: Scalar>(alpha: T) -> impl Fn(T, T) -> Complex<T> {
    move |xi, eta| {
        let r = xi.hypot(eta);
        if alpha < T::zero() && r == T::zero() {
            re(T::infinity())
        } else {
            re(r.powf(alpha))
        }
    }
}

/// `⟨∇⟩^s ↔ (1 + |ξ⃗|²)^{s/2}`
pub fn japanese_pow<T: Scalar>(s: T) -> impl Fn(T, T) -> Complex<T> {
    move |xi, eta| re((T::one() + xi * xi + eta * eta).powf(s / T::lit(2.0)))
}

/// Riesz transform `R_j ↔ -i ξ_j / |ξ⃗|` for `j ∈ {1, 2}`.
pub fn riesz<T: Scalar>(j: usize) -> impl Fn(T, T) -> Complex<T> {
    assert!(j == 1 || j == 2, "Riesz index must be 1 or 2");
    move |xi, eta| {
        let r = xi.hypot(eta);
        let c = if j == 1 { xi } else { eta };
        im(-c / r)
    }
}

/// `R_ij = R_i R_j ↔ -ξ_i ξ_j / |ξ⃗|²`
pub fn riesz_pair<T: Scalar>(i: usize, j: usize) -> impl Fn(T, T) -> Complex<T> {
    let (ri, rj) = (riesz::<T>(i), riesz::<T>(j));
    move |xi, eta| ri(xi, eta) * rj(xi, eta)
}

/// `R′₁ = -∂x(-Δ)⁻¹ ↔ -iξ/|ξ⃗|²`
pub fn riesz_prime_1<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |xi, eta| im(-xi / (xi * xi + eta * eta))
}

/// `R′₂ = ∂y(-Δ)⁻¹ ↔ iη/|ξ⃗|²`
pub fn riesz_prime_2<T: Scalar>() -> impl Fn(T, T) -> Complex<T> {
    |xi, eta| im(eta / (xi * xi + eta * eta))
}

/// Heat semigroup `e^{ctΔ} ↔ e^{-ct|ξ⃗|²}`
pub fn heat<T: Scalar>(c: T, t: T) -> impl Fn(T, T) -> Complex<T> {
    move |xi, eta| re((-c * t * (xi * xi + eta * eta)).exp())
}
