use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Uniform periodic box `[0, lx) x [0, ly)` sampled at `nx * ny` points.
///
/// Flat index `iy * nx + ix` (kx fastest). Index `i` along an axis with `n`
/// modes carries the integer wavenumber `i` for `i < n/2` and `i - n`
/// otherwise, i.e. the FFT order `0, 1, .., n/2-1, -n/2, .., -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D<T> {
    nx: usize,
    ny: usize,
    lx: T,
    ly: T,
}

impl<T: Scalar> Grid2D<T> {
    pub fn new(nx: usize, ny: usize, lx: T, ly: T) -> Result<Self> {
        for (n, axis) in [(nx, "nx"), (ny, "ny")] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::InvalidGrid(format!("{axis} = {n} must be even and >= 8")));
            }
        }
        if !(lx.is_finite() && ly.is_finite() && lx > T::zero() && ly > T::zero()) {
            return Err(Error::InvalidGrid(format!("box sides must be positive, got {lx} x {ly}")));
        }
        Ok(Self { nx, ny, lx, ly })
    }

    /// Square box of side `l` with `n` modes per axis.
    pub fn square(n: usize, l: T) -> Result<Self> {
        Self::new(n, n, l, l)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn lx(&self) -> T {
        self.lx
    }
    pub fn ly(&self) -> T {
        self.ly
    }
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn area(&self) -> T {
        self.lx * self.ly
    }

    pub fn dkx(&self) -> T {
        T::TAU() / self.lx
    }
    pub fn dky(&self) -> T {
        T::TAU() / self.ly
    }
    pub fn dx(&self) -> T {
        self.lx / T::lit(self.nx as f64)
    }
    pub fn dy(&self) -> T {
        self.ly / T::lit(self.ny as f64)
    }

    /// Signed integer wavenumber of axis index `i` on an axis with `n` modes.
    #[inline]
    pub fn mode_index(i: usize, n: usize) -> i64 {
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Axis index holding integer wavenumber `k` (inverse of [`Self::mode_index`]).
    #[inline]
    pub fn axis_index(k: i64, n: usize) -> usize {
        k.rem_euclid(n as i64) as usize
    }

    #[inline]
    pub fn kx_int(&self, ix: usize) -> i64 {
        Self::mode_index(ix, self.nx)
    }
    #[inline]
    pub fn ky_int(&self, iy: usize) -> i64 {
        Self::mode_index(iy, self.ny)
    }

    /// Physical wavenumber ξ of column `ix`.
    #[inline]
    pub fn xi(&self, ix: usize) -> T {
        T::lit(self.kx_int(ix) as f64) * self.dkx()
    }
    /// Physical wavenumber η of row `iy`.
    #[inline]
    pub fn eta(&self, iy: usize) -> T {
        T::lit(self.ky_int(iy) as f64) * self.dky()
    }

    /// `(ξ, η)` of flat index `k`.
    #[inline]
    pub fn wavevector(&self, k: usize) -> (T, T) {
        (self.xi(k % self.nx), self.eta(k / self.nx))
    }

    /// `(ξ, η)` with Nyquist components set to 0: the Hermitian part of odd
    /// symbols such as `iξ` vanishes on the self-conjugate lines.
    #[inline]
    pub fn odd_wavevector(&self, k: usize) -> (T, T) {
        let (ix, iy) = (k % self.nx, k / self.nx);
        let xi = if ix == self.nx / 2 { T::zero() } else { self.xi(ix) };
        let eta = if iy == self.ny / 2 { T::zero() } else { self.eta(iy) };
        (xi, eta)
    }

    /// Per-axis components of [`Self::odd_wavevector`]: `(ξ by column, η by row)`.
    pub fn odd_axes(&self) -> (Vec<T>, Vec<T>) {
        let xi = (0..self.nx).map(|ix| if ix == self.nx / 2 { T::zero() } else { self.xi(ix) }).collect();
        let eta = (0..self.ny).map(|iy| if iy == self.ny / 2 { T::zero() } else { self.eta(iy) }).collect();
        (xi, eta)
    }

    /// Per-axis 2/3-band membership: `(by column, by row)`.
    pub fn band_axes(&self) -> (Vec<bool>, Vec<bool>) {
        let (kx, ky) = self.dealias_cutoff();
        (
            (0..self.nx).map(|ix| self.kx_int(ix).abs() <= kx).collect(),
            (0..self.ny).map(|iy| self.ky_int(iy).abs() <= ky).collect(),
        )
    }

    /// Flat index of the mode `-k⃗`.
    #[inline]
    pub fn conjugate_index(&self, k: usize) -> usize {
        let (ix, iy) = (k % self.nx, k / self.nx);
        let cx = (self.nx - ix) % self.nx;
        let cy = (self.ny - iy) % self.ny;
        cy * self.nx + cx
    }

    /// True on the self-conjugate Nyquist column/row, where `-n/2 ≡ n/2`.
    #[inline]
    pub fn is_nyquist(&self, k: usize) -> bool {
        k % self.nx == self.nx / 2 || k / self.nx == self.ny / 2
    }

    /// Flat index holding integer wavenumbers `(kx, ky)`.
    pub fn flat_index(&self, kx: i64, ky: i64) -> usize {
        Self::axis_index(ky, self.ny) * self.nx + Self::axis_index(kx, self.nx)
    }

    /// Physical sample point `(x, y)` of flat index `k`.
    #[inline]
    pub fn point(&self, k: usize) -> (T, T) {
        (T::lit((k % self.nx) as f64) * self.dx(), T::lit((k / self.nx) as f64) * self.dy())
    }

    /// Largest retained integer wavenumber per axis under the 2/3 rule,
    /// the largest `K` with `3K < n`.
    pub fn dealias_cutoff(&self) -> (i64, i64) {
        (((self.nx - 1) / 3) as i64, ((self.ny - 1) / 3) as i64)
    }

    /// Largest retained physical wavenumber magnitude along either axis.
    pub fn k_max_retained(&self) -> T {
        let (kx, ky) = self.dealias_cutoff();
        let a = T::lit(kx as f64) * self.dkx();
        let b = T::lit(ky as f64) * self.dky();
        a.max(b)
    }

    /// Converts the box to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Grid2D<U> {
        Grid2D { nx: self.nx, ny: self.ny, lx: U::lit(self.lx.to_f64_lossy()), ly: U::lit(self.ly.to_f64_lossy()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn rejects_odd_or_small_sizes() {
        assert!(Grid2D::<f64>::new(7, 8, 1.0, 1.0).is_err());
        assert!(Grid2D::<f64>::new(6, 8, 1.0, 1.0).is_err());
        assert!(Grid2D::<f64>::new(8, 8, 0.0, 1.0).is_err());
        assert!(Grid2D::<f64>::new(8, 10, 1.0, f64::NAN).is_err());
        assert!(Grid2D::<f64>::new(8, 10, 1.0, 2.0).is_ok());
    }

    #[test]
    fn wavenumber_map_is_a_bijection() {
        let g = Grid2D::<f64>::new(8, 12, 3.0, 5.0).unwrap();
        let mut seen = HashSet::new();
        for k in 0..g.len() {
            let (ix, iy) = (k % g.nx(), k / g.nx());
            let (kx, ky) = (g.kx_int(ix), g.ky_int(iy));
            assert!((-4..4).contains(&kx) && (-6..6).contains(&ky));
            assert!(seen.insert((kx, ky)));
            assert_eq!(g.flat_index(kx, ky), k);
        }
        assert_eq!(seen.len(), 96);
    }

    #[test]
    fn physical_wavenumbers_scale_with_box() {
        let g = Grid2D::<f64>::square(16, 4.0 * std::f64::consts::PI).unwrap();
        assert!((g.xi(1) - 0.5).abs() < 1e-15);
        assert!((g.xi(15) + 0.5).abs() < 1e-15);
        assert!((g.eta(8) + 4.0).abs() < 1e-15);
    }

    #[test]
    fn conjugate_index_negates_wavenumbers() {
        let g = Grid2D::<f64>::new(10, 8, 1.0, 1.0).unwrap();
        for k in 0..g.len() {
            let c = g.conjugate_index(k);
            let (ix, iy) = (k % 10, k / 10);
            let (cx, cy) = (c % 10, c / 10);
            assert_eq!((g.kx_int(ix) + g.kx_int(cx)).rem_euclid(10), 0);
            assert_eq!((g.ky_int(iy) + g.ky_int(cy)).rem_euclid(8), 0);
            assert_eq!(g.conjugate_index(c), k);
        }
    }

    #[test]
    fn dealias_cutoff_is_strictly_below_a_third() {
        assert_eq!(Grid2D::<f64>::square(256, 1.0).unwrap().dealias_cutoff(), (85, 85));
        assert_eq!(Grid2D::<f64>::square(96, 1.0).unwrap().dealias_cutoff(), (31, 31));
        assert_eq!(Grid2D::<f64>::square(8, 1.0).unwrap().dealias_cutoff(), (2, 2));
    }
}
