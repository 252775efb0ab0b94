use num_complex::Complex;

use super::fft::{enforce_hermitian, Transformer};
use super::grid::Grid2D;
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum_by, Scalar};

/// Real field sampled on the grid points `(ix dx, iy dy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField<T: Scalar> {
    grid: Grid2D<T>,
    values: Vec<T>,
}

impl<T: Scalar> PhysicalField<T> {
    pub fn new(grid: Grid2D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("physical field".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid2D<T>) -> Self {
        Self { grid, values: vec![T::zero(); grid.len()] }
    }

    /// Samples `f(x, y)` on the grid. Panics if `f` returns a non-finite value.
    pub fn from_fn(grid: Grid2D<T>, f: impl Fn(T, T) -> T) -> Self {
        let values = (0..grid.len())
            .map(|k| {
                let (x, y) = grid.point(k);
                f(x, y)
            })
            .collect::<Vec<_>>();
        Self::new(grid, values).expect("sampled function must be finite")
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }
    pub fn values(&self) -> &[T] {
        &self.values
    }
    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// `∫ f² dx dy` by the rectangle rule (exact for band-limited fields).
    pub fn l2_norm_sq(&self) -> T {
        let cell = self.grid.dx() * self.grid.dy();
        pairwise_sum_by(self.values.len(), &|k| self.values[k] * self.values[k]) * cell
    }
}

/// Fourier coefficients of a real periodic field, normalized as in
/// [`super::fft`]: `f(x⃗) = Σ c(k⃗) e^{i k⃗·x⃗}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T: Scalar> {
    grid: Grid2D<T>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> SpectralField<T> {
    pub fn new(grid: Grid2D<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid2D<T>) -> Self {
        Self { grid, coeffs: vec![Complex::default(); grid.len()] }
    }

    /// Builds coefficients from `c(ξ, η)`.
    pub fn from_fn(grid: Grid2D<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let coeffs = (0..grid.len())
            .map(|k| {
                let (xi, eta) = grid.wavevector(k);
                f(xi, eta)
            })
            .collect();
        Self { grid, coeffs }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }
    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Mean value of the field (the `k⃗ = 0` coefficient).
    pub fn mean(&self) -> T {
        self.coeffs[0].re
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `‖f‖²_{L²(box)} = Lx Ly Σ |c|²`.
    pub fn l2_norm_sq(&self) -> T {
        self.grid.area() * pairwise_sum_by(self.coeffs.len(), &|k| self.coeffs[k].norm_sqr())
    }

    /// Largest `|c(k⃗) - conj(c(-k⃗))|` relative to the largest coefficient.
    pub fn hermitian_defect(&self) -> T {
        let scale = self.max_abs();
        if scale == T::zero() {
            return T::zero();
        }
        let worst = (0..self.coeffs.len()).fold(T::zero(), |m, k| {
            let c = self.coeffs[self.grid.conjugate_index(k)].conj();
            m.max((self.coeffs[k] - c).norm())
        });
        worst / scale
    }

    pub fn enforce_hermitian(&mut self) {
        enforce_hermitian(&self.grid, &mut self.coeffs);
    }

    pub fn scaled(&self, s: T) -> Self {
        Self { grid: self.grid, coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: T, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b * s).collect();
        Ok(Self { grid: self.grid, coeffs })
    }

    /// Largest coefficient difference relative to the larger of the two fields.
    pub fn relative_distance(&self, other: &Self) -> T {
        let scale = self.max_abs().max(other.max_abs());
        if scale == T::zero() {
            return T::zero();
        }
        let d = self.coeffs.iter().zip(&other.coeffs).fold(T::zero(), |m, (a, b)| m.max((a - b).norm()));
        d / scale
    }

    pub fn cast<U: Scalar>(&self) -> SpectralField<U> {
        SpectralField {
            grid: self.grid.cast(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(U::lit(c.re.to_f64_lossy()), U::lit(c.im.to_f64_lossy())))
                .collect(),
        }
    }
}

/// Forward transform with a throwaway plan. Hot loops should hold a [`Transformer`].
pub fn forward_transform<T: Scalar>(f: &PhysicalField<T>) -> SpectralField<T> {
    let mut t = Transformer::new(*f.grid());
    SpectralField { grid: *f.grid(), coeffs: t.forward_real(f.values()) }
}

pub fn inverse_transform<T: Scalar>(f: &SpectralField<T>) -> PhysicalField<T> {
    let mut t = Transformer::new(*f.grid());
    PhysicalField { grid: *f.grid(), values: t.inverse_real(f.coeffs()) }
}
