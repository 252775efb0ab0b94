//! Norms of spectral fields with continuum-consistent weights.
//!
//! With coefficients `c(k⃗)` of a field on a box of area `A = Lx Ly`:
//! `‖f‖²_{L²} = A Σ|c|²`, `‖f‖_{FL^p} = (A^{p-1} Σ|c|^p)^{1/p}` (so `FL¹` is
//! `Σ|c|`, an upper bound for `max|f|`), and `‖f‖²_{H^s} = A Σ ⟨ξ⃗⟩^{2s}|c|²`.

use num_complex::Complex;

use crate::scalar::{pairwise_sum_by, Scalar};
use crate::spectral::{PhysicalField, SpectralField};

pub fn l2<T: Scalar>(f: &SpectralField<T>) -> T {
    f.l2_norm_sq().sqrt()
}

/// `‖(f, g)‖_{L²}`
pub fn l2_vec<T: Scalar>(f: &SpectralField<T>, g: &SpectralField<T>) -> T {
    (f.l2_norm_sq() + g.l2_norm_sq()).sqrt()
}

pub fn fl<T: Scalar>(f: &SpectralField<T>, p: T) -> T {
    fl_masked(f, p, |_| true)
}

/// `FL^p` norm restricted to the modes where `keep(k)` holds.
pub fn fl_masked<T: Scalar>(f: &SpectralField<T>, p: T, keep: impl Fn(usize) -> bool + Sync) -> T {
    let c = f.coeffs();
    let area = f.grid().area();
    if p == T::one() {
        return pairwise_sum_by(c.len(), &|k| if keep(k) { c[k].norm_sqr().sqrt() } else { T::zero() });
    }
    let s = pairwise_sum_by(c.len(), &|k| if keep(k) { c[k].norm().powf(p) } else { T::zero() });
    (area.powf(p - T::one()) * s).powf(T::one() / p)
}

/// `‖(f, g)‖_{FL¹} = Σ |(f̂, ĝ)(k⃗)|`
pub fn fl1_vec<T: Scalar>(f: &SpectralField<T>, g: &SpectralField<T>) -> T {
    let (a, b) = (f.coeffs(), g.coeffs());
    pairwise_sum_by(a.len(), &|k| (a[k].norm_sqr() + b[k].norm_sqr()).sqrt())
}

fn weighted_sq<T: Scalar>(f: &SpectralField<T>, s: T) -> T {
    let grid = f.grid();
    let c: &[Complex<T>] = f.coeffs();
    grid.area()
        * pairwise_sum_by(c.len(), &|k| {
            let (xi, eta) = grid.wavevector(k);
            (T::one() + xi * xi + eta * eta).powf(s) * c[k].norm_sqr()
        })
}

pub fn hs<T: Scalar>(f: &SpectralField<T>, s: T) -> T {
    weighted_sq(f, s).sqrt()
}

pub fn hs_vec<T: Scalar>(f: &SpectralField<T>, g: &SpectralField<T>, s: T) -> T {
    (weighted_sq(f, s) + weighted_sq(g, s)).sqrt()
}

/// `H^s` inner product `A Σ ⟨ξ⃗⟩^{2s} Re(f̂ conj(ĝ))`.
pub fn hs_inner<T: Scalar>(f: &SpectralField<T>, g: &SpectralField<T>, s: T) -> T {
    let grid = f.grid();
    let (a, b) = (f.coeffs(), g.coeffs());
    grid.area()
        * pairwise_sum_by(a.len(), &|k| {
            let (xi, eta) = grid.wavevector(k);
            (T::one() + xi * xi + eta * eta).powf(s) * (a[k] * b[k].conj()).re
        })
}

/// Which variable the inner `L²` integral runs over in a mixed norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inner {
    /// `L¹_y(L²_x)`
    X,
    /// `L¹_x(L²_y)`
    Y,
}

/// Mixed norm `‖(Σ_j |f_j|²)^{1/2}‖` of the components, iterated with
/// cell weights: inner `L²` over the chosen variable, outer `L¹` over the other.
pub fn mixed_l1_l2<T: Scalar>(components: &[&PhysicalField<T>], inner: Inner) -> T {
    let grid = components[0].grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let sq = |ix: usize, iy: usize| {
        components.iter().map(|f| f.values()[iy * nx + ix].powi(2)).fold(T::zero(), |a, b| a + b)
    };
    match inner {
        Inner::X => grid.dy() * pairwise_sum_by(ny, &|iy| (grid.dx() * pairwise_sum_by(nx, &|ix| sq(ix, iy))).sqrt()),
        Inner::Y => grid.dx() * pairwise_sum_by(nx, &|ix| (grid.dy() * pairwise_sum_by(ny, &|iy| sq(ix, iy))).sqrt()),
    }
}
