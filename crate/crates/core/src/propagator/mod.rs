//! Exact linear semigroup of the system linearized about `(0, 1)`.
//!
//! For each frequency the pairs `(û, b̂)` and `(v̂, B̂)` evolve under the same
//! 2×2 matrix `A = [[-|ξ⃗|², -iξ], [-iξ, 0]]`. The multiplier triple below is
//! `e^{tA} = [[M̂₃, M̂₁], [M̂₁, M̂₂]]` in exactly that form.
//!
//! The transforms in [`crate::spectral`] use `f̂(ξ⃗) = Σ f e^{-ix⃗·ξ⃗}`, under which
//! `∂x ↔ +iξ`, so the matrix acting on stored coefficients is
//! `[[-|ξ⃗|², iξ], [iξ, 0]]`. [`state_multipliers`] returns the triple for that
//! matrix (the off-diagonal entry flips sign, `M̂₂` and `M̂₃` are unchanged);
//! [`apply_semigroup`] and [`derivative_identity_residuals`] use it.

pub mod oracle;
pub mod sweep;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{Grid2D, SpectralField, StateSpectral};

/// Below this `|δt|` the hyperbolic factors are summed from their series.
pub const SERIES_SWITCH: f64 = 1e-3;
/// Relative width of the band around `|ξ⃗|⁴ = 4ξ²` tagged [`Regime::Degenerate`].
pub const DEGENERATE_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    RealBranch,
    ComplexBranch,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair<T: Scalar> {
    pub lam_plus: Complex<T>,
    pub lam_minus: Complex<T>,
    /// `(λ₊ + λ₋)/2 = -|ξ⃗|²/2`
    pub mean: T,
    /// `δ = (λ₊ - λ₋)/2`, real or purely imaginary.
    pub half_gap: Complex<T>,
    /// `δ² = (|ξ⃗|⁴ - 4ξ²)/4`
    pub half_gap_sq: T,
    pub regime: Regime,
}

pub fn eigenvalues<T: Scalar>(xi: T, eta: T) -> EigenPair<T> {
    let r2 = xi * xi + eta * eta;
    let ax = xi.abs();
    let two = T::lit(2.0);
    // (r² - 2|ξ|)(r² + 2|ξ|) keeps the sign of r⁴ - 4ξ² accurate near the collision curve
    let disc = (r2 - two * ax) * (r2 + two * ax);
    let mean = -r2 / two;
    let half_gap = Complex::new(disc, T::zero()).sqrt() / two;
    let lam_minus = Complex::new(mean, T::zero()) - half_gap;
    let lam_plus = if lam_minus.norm() > T::zero() {
        Complex::new(xi * xi, T::zero()) / lam_minus
    } else {
        Complex::new(mean, T::zero()) + half_gap
    };
    let tau = T::lit(DEGENERATE_REL) * r2 * r2;
    let regime = if disc > tau {
        Regime::RealBranch
    } else if disc < -tau {
        Regime::ComplexBranch
    } else {
        Regime::Degenerate
    };
    EigenPair { lam_plus, lam_minus, mean, half_gap, half_gap_sq: disc / T::lit(4.0), regime }
}

/// Entries of `e^{tA} = [[m3, m1], [m1, m2]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierTriple<T: Scalar> {
    pub m1: Complex<T>,
    pub m2: Complex<T>,
    pub m3: Complex<T>,
}

impl<T: Scalar> MultiplierTriple<T> {
    pub fn as_matrix(&self) -> [[Complex<T>; 2]; 2] {
        [[self.m3, self.m1], [self.m1, self.m2]]
    }
}

/// Real scalars `(S, C)` with `S = e^{μt} sinh(δt)/δ`, `C = e^{μt} cosh(δt)`,
/// each multiplied by `e^{κt}`; plus the eigen-form diagonal entries.
struct Kernel<T> {
    s: T,
    m2: T,
    m3: T,
}

fn kernel<T: Scalar>(xi: T, eta: T, t: T, shift: T) -> Kernel<T> {
    let e = eigenvalues(xi, eta);
    let mu = e.mean;
    let d2 = e.half_gap_sq;
    let z2 = d2 * t * t;
    let sw = T::lit(SERIES_SWITCH);
    if z2.abs() < sw * sw {
        let em = ((mu + shift) * t).exp();
        let sinhc = T::one() + z2 / T::lit(6.0) * (T::one() + z2 / T::lit(20.0) * (T::one() + z2 / T::lit(42.0)));
        let cosh = T::one() + z2 / T::lit(2.0) * (T::one() + z2 / T::lit(12.0) * (T::one() + z2 / T::lit(30.0)));
        let s = em * t * sinhc;
        let c = em * cosh;
        return Kernel { s, m2: c - mu * s, m3: c + mu * s };
    }
    if d2 > T::zero() {
        // eigen form: no cancellation between the two exponentials in M̂₃ deep in the real branch
        let (lp, lm) = (e.lam_plus.re, e.lam_minus.re);
        let delta = d2.sqrt();
        let (ep, em) = (((lp + shift) * t).exp(), ((lm + shift) * t).exp());
        let two_d = T::lit(2.0) * delta;
        Kernel { s: (ep - em) / two_d, m2: (lp * em - lm * ep) / two_d, m3: (lp * ep - lm * em) / two_d }
    } else {
        let w = (-d2).sqrt();
        let em = ((mu + shift) * t).exp();
        let (sn, cs) = (w * t).sin_cos();
        let s = em * sn / w;
        let c = em * cs;
        Kernel { s, m2: c - mu * s, m3: c + mu * s }
    }
}

fn check_time<T: Scalar>(t: T) -> Result<()> {
    if t < T::zero() || !t.is_finite() {
        Err(Error::NegativeTime(t.to_f64_lossy()))
    } else {
        Ok(())
    }
}

/// The multiplier triple of `e^{tA}` for `A = [[-|ξ⃗|², -iξ], [-iξ, 0]]`.
pub fn multipliers<T: Scalar>(xi: T, eta: T, t: T) -> Result<MultiplierTriple<T>> {
    multipliers_shifted(xi, eta, t, T::zero())
}

/// `e^{κt}` times [`multipliers`], evaluated without forming `e^{-|ξ⃗|²t}` on its own.
pub fn multipliers_shifted<T: Scalar>(xi: T, eta: T, t: T, kappa: T) -> Result<MultiplierTriple<T>> {
    check_time(t)?;
    if t == T::zero() {
        let one = Complex::new(T::one(), T::zero());
        return Ok(MultiplierTriple { m1: Complex::default(), m2: one, m3: one });
    }
    let k = kernel(xi, eta, t, kappa);
    Ok(MultiplierTriple {
        m1: Complex::new(T::zero(), -xi * k.s),
        m2: Complex::new(k.m2, T::zero()),
        m3: Complex::new(k.m3, T::zero()),
    })
}

/// Triple for the matrix acting on stored coefficients, `[[-|ξ⃗|², iξ], [iξ, 0]]`.
pub fn state_multipliers<T: Scalar>(xi: T, eta: T, t: T) -> Result<MultiplierTriple<T>> {
    let mut m = multipliers(xi, eta, t)?;
    m.m1 = -m.m1;
    Ok(m)
}

/// Centered-difference residuals `|∂ₜM̂₂ - iξM̂₁|` and `|∂ₜM̂₁ - iξM̂₃|` of the
/// state-convention triple.
pub fn derivative_identity_residuals<T: Scalar>(xi: T, eta: T, t: T, h: T) -> Result<(T, T)> {
    check_time(t - h)?;
    let p = state_multipliers(xi, eta, t + h)?;
    let m = state_multipliers(xi, eta, t - h)?;
    let c = state_multipliers(xi, eta, t)?;
    let two_h = T::lit(2.0) * h;
    let ixi = Complex::new(T::zero(), xi);
    let r1 = ((p.m2 - m.m2) / two_h - ixi * c.m1).norm();
    let r2 = ((p.m1 - m.m1) / two_h - ixi * c.m3).norm();
    Ok((r1, r2))
}

/// Per-mode semigroup factors on a grid: `M̂₃`, `M̂₂`, and `s₁` with state
/// off-diagonal entry `i s₁`.
#[derive(Debug, Clone)]
pub struct SemigroupTable<T: Scalar> {
    grid: Grid2D<T>,
    t: T,
    m3: Vec<T>,
    m2: Vec<T>,
    s1: Vec<T>,
}

impl<T: Scalar> SemigroupTable<T> {
    pub fn new(grid: Grid2D<T>, t: T) -> Result<Self> {
        check_time(t)?;
        let n = grid.len();
        let (mut m3, mut m2, mut s1) = (vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]);
        for k in 0..n {
            let (xi, eta) = grid.wavevector(k);
            if grid.odd_wavevector(k).0 != xi {
                // the coupling ∂x has no Hermitian part here: u is heat flow, b is frozen
                m3[k] = (-(xi * xi + eta * eta) * t).exp();
                m2[k] = T::one();
                continue;
            }
            let m = state_multipliers(xi, eta, t)?;
            m3[k] = m.m3.re;
            m2[k] = m.m2.re;
            s1[k] = m.m1.im;
        }
        Ok(Self { grid, t, m3, m2, s1 })
    }

    pub fn time(&self) -> T {
        self.t
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    /// `(a, c) ← [[M̂₃, iS₁], [iS₁, M̂₂]] (a, c)` mode by mode.
    pub fn apply_pair(&self, a: &mut [Complex<T>], c: &mut [Complex<T>]) {
        for k in 0..a.len() {
            let i_s = Complex::new(T::zero(), self.s1[k]);
            let (x, y) = (a[k], c[k]);
            a[k] = x * self.m3[k] + y * i_s;
            c[k] = x * i_s + y * self.m2[k];
        }
    }

    pub fn apply(&self, state: &StateSpectral<T>) -> Result<StateSpectral<T>> {
        let mut out = state.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, state: &mut StateSpectral<T>) -> Result<()> {
        if state.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let StateSpectral { u, v, b, bb } = state;
        self.apply_pair(u.coeffs_mut(), b.coeffs_mut());
        self.apply_pair(v.coeffs_mut(), bb.coeffs_mut());
        Ok(())
    }
}

/// Evolves a state by the linear semigroup for time `t`.
pub fn apply_semigroup<T: Scalar>(state0: &StateSpectral<T>, t: T) -> Result<StateSpectral<T>> {
    SemigroupTable::new(*state0.grid(), t)?.apply(state0)
}

/// Applies the semigroup to the pair `(f, g)` standing for `(u, b)` or `(v, B)`.
pub fn apply_semigroup_pair<T: Scalar>(
    f: &SpectralField<T>,
    g: &SpectralField<T>,
    t: T,
) -> Result<(SpectralField<T>, SpectralField<T>)> {
    f.same_grid(g)?;
    let table = SemigroupTable::new(*f.grid(), t)?;
    let (mut a, mut c) = (f.clone(), g.clone());
    table.apply_pair(a.coeffs_mut(), c.coeffs_mut());
    Ok((a, c))
}
