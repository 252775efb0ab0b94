//! 2D FFTs on the grid layout, with the coefficient normalization
//! `c(k⃗) = (1 / (nx ny)) Σ f(x⃗_j) e^{-i k⃗·x⃗_j}` (forward) and the plain
//! sum `f(x⃗_j) = Σ c(k⃗) e^{i k⃗·x⃗_j}` (inverse). `c(k⃗)` approximates the
//! Fourier-series coefficient `(1/(Lx Ly)) ∫ f e^{-i k⃗·x⃗}`.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid2D;
use crate::scalar::Scalar;

/// Rows handed to one rayon task. Each row is transformed independently, so
/// the output does not depend on the number of worker threads.
const ROWS_PER_TASK: usize = 16;

const COLS_PER_BLOCK: usize = 8;

/// Cached FFT plans and transpose buffer for one grid.
pub struct Transformer<T: Scalar> {
    grid: Grid2D<T>,
    fx: Arc<dyn Fft<T>>,
    ix: Arc<dyn Fft<T>>,
    fy: Arc<dyn Fft<T>>,
    iy: Arc<dyn Fft<T>>,
    block: Vec<Complex<T>>,
    work: Vec<Complex<T>>,
}

impl<T: Scalar> Transformer<T> {
    pub fn new(grid: Grid2D<T>) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            fx: planner.plan_fft_forward(grid.nx()),
            ix: planner.plan_fft_inverse(grid.nx()),
            fy: planner.plan_fft_forward(grid.ny()),
            iy: planner.plan_fft_inverse(grid.ny()),
            block: vec![Complex::default(); COLS_PER_BLOCK.min(grid.nx()) * grid.ny()],
            work: vec![Complex::default(); grid.len()],
            grid,
        }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    fn rows(fft: &Arc<dyn Fft<T>>, data: &mut [Complex<T>], len: usize) {
        if rayon::current_num_threads() == 1 {
            let mut scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];
            fft.process_with_scratch(data, &mut scratch);
            return;
        }
        data.par_chunks_mut(len * ROWS_PER_TASK).for_each(|block| {
            let mut scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];
            fft.process_with_scratch(block, &mut scratch);
        });
    }

    fn transform(&mut self, data: &mut [Complex<T>], forward: bool) {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        assert_eq!(data.len(), nx * ny, "buffer does not match grid");
        let (row_fft, col_fft) = if forward { (&self.fx, &self.fy) } else { (&self.ix, &self.iy) };
        Self::rows(row_fft, data, nx);
        Self::columns(col_fft, data, nx, ny, &mut self.block);
        if forward {
            let scale = T::one() / T::lit((nx * ny) as f64);
            data.iter_mut().for_each(|c| *c = *c * scale);
        }
    }

    /// Column transforms, `COLS_PER_BLOCK` columns at a time gathered into a
    /// contiguous buffer.
    fn columns(fft: &Arc<dyn Fft<T>>, data: &mut [Complex<T>], nx: usize, ny: usize, buf: &mut [Complex<T>]) {
        let mut scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];
        for c0 in (0..nx).step_by(COLS_PER_BLOCK) {
            let w = COLS_PER_BLOCK.min(nx - c0);
            let block = &mut buf[..w * ny];
            for r in 0..ny {
                let row = &data[r * nx + c0..r * nx + c0 + w];
                for (j, &z) in row.iter().enumerate() {
                    block[j * ny + r] = z;
                }
            }
            fft.process_with_scratch(block, &mut scratch);
            for r in 0..ny {
                let row = &mut data[r * nx + c0..r * nx + c0 + w];
                for (j, z) in row.iter_mut().enumerate() {
                    *z = block[j * ny + r];
                }
            }
        }
    }

    /// In-place forward transform of physical samples stored as complex numbers.
    pub fn forward_in_place(&mut self, data: &mut [Complex<T>]) {
        self.transform(data, true);
    }

    /// In-place inverse transform to physical samples.
    pub fn inverse_in_place(&mut self, data: &mut [Complex<T>]) {
        self.transform(data, false);
    }

    /// Forward transform of a real field.
    pub fn forward_real(&mut self, values: &[T]) -> Vec<Complex<T>> {
        let mut buf: Vec<Complex<T>> = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.forward_in_place(&mut buf);
        enforce_hermitian(&self.grid, &mut buf);
        buf
    }

    /// Forward transform of two real fields with one complex FFT.
    pub fn forward_real_pair(&mut self, a: &[T], b: &[T]) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        let n = self.grid.len();
        let (mut ca, mut cb) = (vec![Complex::default(); n], vec![Complex::default(); n]);
        self.forward_real_pair_into(a, b, &mut ca, &mut cb);
        (ca, cb)
    }

    /// [`Self::forward_real_pair`] into caller buffers.
    pub fn forward_real_pair_into(&mut self, a: &[T], b: &[T], out_a: &mut [Complex<T>], out_b: &mut [Complex<T>]) {
        let mut z = std::mem::take(&mut self.work);
        for ((zj, &x), &y) in z.iter_mut().zip(a).zip(b) {
            *zj = Complex::new(x, y);
        }
        self.forward_in_place(&mut z);
        split_packed(&self.grid, &z, out_a, out_b);
        self.work = z;
    }

    /// Inverse transform of a Hermitian spectrum; returns the real part.
    pub fn inverse_real(&mut self, coeffs: &[Complex<T>]) -> Vec<T> {
        let mut buf = coeffs.to_vec();
        self.inverse_in_place(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Inverse transform of two Hermitian spectra with one complex FFT.
    pub fn inverse_real_pair(&mut self, a: &[Complex<T>], b: &[Complex<T>]) -> (Vec<T>, Vec<T>) {
        let n = self.grid.len();
        let (mut ra, mut rb) = (vec![T::zero(); n], vec![T::zero(); n]);
        self.inverse_real_pair_into(a, b, &mut ra, &mut rb);
        (ra, rb)
    }

    /// [`Self::inverse_real_pair`] into caller buffers.
    pub fn inverse_real_pair_into(&mut self, a: &[Complex<T>], b: &[Complex<T>], out_a: &mut [T], out_b: &mut [T]) {
        let i = Complex::new(T::zero(), T::one());
        let mut z = std::mem::take(&mut self.work);
        for ((zj, &x), &y) in z.iter_mut().zip(a).zip(b) {
            *zj = x + i * y;
        }
        self.inverse_in_place(&mut z);
        for ((c, ra), rb) in z.iter().zip(out_a.iter_mut()).zip(out_b.iter_mut()) {
            *ra = c.re;
            *rb = c.im;
        }
        self.work = z;
    }
}

/// Separates `Z = fft(a + i b)` into the spectra of the real fields `a` and `b`.
fn split_packed<T: Scalar>(grid: &Grid2D<T>, z: &[Complex<T>], a: &mut [Complex<T>], b: &mut [Complex<T>]) {
    let half = T::lit(0.5);
    let (nx, ny) = (grid.nx(), grid.ny());
    for iy in 0..ny {
        let cy = (ny - iy) % ny;
        for ix in 0..nx {
            let k = iy * nx + ix;
            let zc = z[cy * nx + (nx - ix) % nx].conj();
            a[k] = (z[k] + zc) * half;
            let d = (z[k] - zc) * half;
            // d / i
            b[k] = Complex::new(d.im, -d.re);
        }
    }
}

/// Replaces `c` by its Hermitian part `(c(k) + conj(c(-k))) / 2`.
pub fn enforce_hermitian<T: Scalar>(grid: &Grid2D<T>, coeffs: &mut [Complex<T>]) {
    let half = T::lit(0.5);
    let (nx, ny) = (grid.nx(), grid.ny());
    for iy in 0..ny {
        let cy = (ny - iy) % ny;
        for ix in 0..nx {
            let (k, c) = (iy * nx + ix, cy * nx + (nx - ix) % nx);
            if c < k {
                continue;
            }
            if c == k {
                coeffs[k] = Complex::new(coeffs[k].re, T::zero());
            } else {
                let avg = (coeffs[k] + coeffs[c].conj()) * half;
                coeffs[k] = avg;
                coeffs[c] = avg.conj();
            }
        }
    }
}
