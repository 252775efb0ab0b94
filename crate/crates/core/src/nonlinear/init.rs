//! Divergence-free initial data from stream functions: `u⃗ = (∂yψ, -∂xψ)`,
//! `b⃗ = (∂yφ, -∂xφ)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::norms::fl1_vec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::ops::in_band;
use crate::spectral::{apply_symbol, forward_transform, symbols, Grid2D, PhysicalField, SpectralField, StateSpectral};

/// Velocity and magnetic pair from two stream functions.
pub fn from_stream_functions<T: Scalar>(psi: &SpectralField<T>, phi: &SpectralField<T>) -> Result<StateSpectral<T>> {
    psi.same_grid(phi)?;
    let perp = |f: &SpectralField<T>| -> Result<(SpectralField<T>, SpectralField<T>)> {
        Ok((apply_symbol(f, symbols::dy())?, apply_symbol(f, symbols::dx())?.scaled(-T::one())))
    };
    let (u, v) = perp(psi)?;
    let (b, bb) = perp(phi)?;
    let mut s = StateSpectral::new(u, v, b, bb)?;
    s.truncate();
    s.project();
    Ok(s)
}

/// Offset of the magnetic stream function's centre, in units of `σ`.
/// Coincident centres would give `u⃗ = b⃗` and a vanishing nonlinearity.
pub const GAUSSIAN_B_OFFSET: (f64, f64) = (1.0, 0.5);

/// `ψ = a e^{-|x⃗-c⃗|²/(2σ²)}` centred in the box, `φ` the same shape shifted by
/// [`GAUSSIAN_B_OFFSET`]`·σ`.
pub fn gaussian_state<T: Scalar>(grid: Grid2D<T>, amplitude: T, sigma: T) -> Result<StateSpectral<T>> {
    if !(amplitude > T::zero()) || !(sigma > T::zero()) {
        return Err(Error::InvalidParameter("gaussian amplitude and width must be positive".into()));
    }
    let two = T::lit(2.0);
    let (cx, cy) = (grid.lx() / two, grid.ly() / two);
    let (ox, oy) = (T::lit(GAUSSIAN_B_OFFSET.0) * sigma, T::lit(GAUSSIAN_B_OFFSET.1) * sigma);
    let bump = |x0: T, y0: T| {
        forward_transform(&PhysicalField::from_fn(grid, move |x, y| {
            amplitude * (-((x - x0).powi(2) + (y - y0).powi(2)) / (two * sigma * sigma)).exp()
        }))
    };
    from_stream_functions(&bump(cx, cy), &bump(cx + ox, cy + oy))
}

/// Seeded random stream functions on `0 < |k⃗| ≤ k_max` (integer wavenumbers,
/// capped by the 2/3 band), scaled so that `‖u⃗‖_{FL¹} = ‖b⃗‖_{FL¹} = amplitude`.
pub fn random_band_state<T: Scalar>(grid: Grid2D<T>, seed: u64, amplitude: T, k_max: i64) -> Result<StateSpectral<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let mut c = vec![Complex::<T>::default(); grid.len()];
        for (k, ck) in c.iter_mut().enumerate() {
            let (kx, ky) = (grid.kx_int(k % grid.nx()), grid.ky_int(k / grid.nx()));
            let (re, im): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if (kx, ky) != (0, 0) && kx * kx + ky * ky <= k_max * k_max && in_band(&grid, k) {
                *ck = Complex::new(T::lit(re), T::lit(im));
            }
        }
        let mut f = SpectralField::new(grid, c).expect("sizes agree");
        f.enforce_hermitian();
        f
    };
    let (psi, phi) = (draw(), draw());
    let mut s = from_stream_functions(&psi, &phi)?;
    let (nu, nb) = (fl1_vec(&s.u, &s.v), fl1_vec(&s.b, &s.bb));
    if nu == T::zero() || nb == T::zero() {
        return Err(Error::InvalidParameter("random band holds no modes".into()));
    }
    for (f, n) in [(&mut s.u, nu), (&mut s.v, nu), (&mut s.b, nb), (&mut s.bb, nb)] {
        *f = f.scaled(amplitude / n);
    }
    Ok(s)
}
