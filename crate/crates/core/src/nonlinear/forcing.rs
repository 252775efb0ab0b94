//! Pressure and the nonlinear forcings of the perturbation system
//!
//! `u⃗_t - Δu⃗ - ∂x b⃗ = F⃗ = -u⃗·∇u⃗ - ∇p + b⃗·∇b⃗`,
//! `b⃗_t - ∂x u⃗ = G⃗ = -u⃗·∇b⃗ + b⃗·∇u⃗`.

use num_complex::Complex;

use crate::scalar::Scalar;
use crate::spectral::fft::Transformer;
use crate::spectral::ops::dealiased_product_with;
use crate::spectral::{apply_symbol, symbols, Grid2D, SpectralField, StateSpectral};

#[derive(Debug, Clone, PartialEq)]
pub struct Forcing<T: Scalar> {
    pub f1: SpectralField<T>,
    pub f2: SpectralField<T>,
    pub g1: SpectralField<T>,
    pub g2: SpectralField<T>,
}

impl<T: Scalar> Forcing<T> {
    pub fn zeros(grid: Grid2D<T>) -> Self {
        let z = SpectralField::zeros(grid);
        Self { f1: z.clone(), f2: z.clone(), g1: z.clone(), g2: z }
    }

    /// The forcing laid out like a state: `(F¹, F², G¹, G²)` in the slots of `(u, v, b, B)`.
    pub fn into_state(self) -> StateSpectral<T> {
        StateSpectral { u: self.f1, v: self.f2, b: self.g1, bb: self.g2 }
    }

    pub fn from_state(s: StateSpectral<T>) -> Self {
        Self { f1: s.u, f2: s.v, g1: s.b, g2: s.bb }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        self.f1.grid()
    }

    pub fn fields(&self) -> [&SpectralField<T>; 4] {
        [&self.f1, &self.f2, &self.g1, &self.g2]
    }
}

fn ap<T: Scalar>(f: &SpectralField<T>, s: impl Fn(T, T) -> Complex<T>) -> SpectralField<T> {
    apply_symbol(f, s).expect("derivative symbols are finite")
}

fn sum<T: Scalar>(terms: &[(T, &SpectralField<T>)]) -> SpectralField<T> {
    let mut acc = SpectralField::zeros(*terms[0].1.grid());
    for &(s, f) in terms {
        acc = acc.add_scaled(s, f).expect("same grid");
    }
    acc
}

/// Advective products `a·∇f = a₁∂x f + a₂∂y f`, dealiased.
struct Advection<'a, T: Scalar> {
    t: Transformer<T>,
    a1: &'a SpectralField<T>,
    a2: &'a SpectralField<T>,
}

impl<T: Scalar> Advection<'_, T> {
    fn along(&mut self, f: &SpectralField<T>) -> SpectralField<T> {
        let p = dealiased_product_with(&mut self.t, self.a1, &ap(f, symbols::dx()));
        let q = dealiased_product_with(&mut self.t, self.a2, &ap(f, symbols::dy()));
        p.add_scaled(T::one(), &q).expect("same grid")
    }
}

/// Components of `w⃗ = b⃗·∇b⃗ - u⃗·∇u⃗`.
fn momentum_terms<T: Scalar>(state: &StateSpectral<T>) -> (SpectralField<T>, SpectralField<T>) {
    let grid = *state.grid();
    let mut ua = Advection { t: Transformer::new(grid), a1: &state.u, a2: &state.v };
    let (uu, uv) = (ua.along(&state.u), ua.along(&state.v));
    let mut ba = Advection { t: ua.t, a1: &state.b, a2: &state.bb };
    let (bb, bbb) = (ba.along(&state.b), ba.along(&state.bb));
    (sum(&[(T::one(), &bb), (-T::one(), &uu)]), sum(&[(T::one(), &bbb), (-T::one(), &uv)]))
}

/// `p = -Δ⁻¹ div(u⃗·∇u⃗ - b⃗·∇b⃗)`, mean mode zero.
pub fn pressure<T: Scalar>(state: &StateSpectral<T>) -> SpectralField<T> {
    let (w1, w2) = momentum_terms(state);
    // div(u⃗·∇u⃗ - b⃗·∇b⃗) = -div w⃗
    let div = sum(&[(-T::one(), &ap(&w1, symbols::dx())), (-T::one(), &ap(&w2, symbols::dy()))]);
    ap(&div, symbols::inv_laplacian()).scaled(-T::one())
}

/// The four forcings in advective form, each product dealiased.
pub fn forcings<T: Scalar>(state: &StateSpectral<T>) -> Forcing<T> {
    let grid = *state.grid();
    let (w1, w2) = momentum_terms(state);
    let p = pressure(state);
    let f1 = sum(&[(T::one(), &w1), (-T::one(), &ap(&p, symbols::dx()))]);
    let f2 = sum(&[(T::one(), &w2), (-T::one(), &ap(&p, symbols::dy()))]);
    let mut ua = Advection { t: Transformer::new(grid), a1: &state.u, a2: &state.v };
    let (ub, ubb) = (ua.along(&state.b), ua.along(&state.bb));
    let mut ba = Advection { t: ua.t, a1: &state.b, a2: &state.bb };
    let (bu, bv) = (ba.along(&state.u), ba.along(&state.v));
    let g1 = sum(&[(-T::one(), &ub), (T::one(), &bu)]);
    let g2 = sum(&[(-T::one(), &ubb), (T::one(), &bv)]);
    Forcing { f1, f2, g1, g2 }
}

/// Relative residuals of two rewrites of the forcings:
/// `F² = R₁₂(b⃗·∇b - u⃗·∇u) - R₁₁(b⃗·∇B - u⃗·∇v)` and `G² = -∂x(uB - bv)`.
pub fn rewrite_residuals<T: Scalar>(state: &StateSpectral<T>) -> (T, T) {
    let direct = forcings(state);
    let (w1, w2) = momentum_terms(state);
    let f2 = sum(&[(T::one(), &ap(&w1, symbols::riesz_pair(1, 2))), (-T::one(), &ap(&w2, symbols::riesz_pair(1, 1)))]);
    let mut t = Transformer::new(*state.grid());
    let ub = dealiased_product_with(&mut t, &state.u, &state.bb);
    let bv = dealiased_product_with(&mut t, &state.b, &state.v);
    let g2 = ap(&sum(&[(T::one(), &ub), (-T::one(), &bv)]), symbols::dx()).scaled(-T::one());
    (rel(&f2, &direct.f2), rel(&g2, &direct.g2))
}

fn rel<T: Scalar>(a: &SpectralField<T>, b: &SpectralField<T>) -> T {
    let d = a.add_scaled(-T::one(), b).expect("same grid").max_abs();
    let s = a.max_abs().max(b.max_abs());
    if s == T::zero() {
        d
    } else {
        d / s
    }
}

/// Forcing evaluation in flux form, reusing FFT plans and buffers:
/// `F⃗ = -P div(u⃗⊗u⃗ - b⃗⊗b⃗)`, `G⃗ = ∇^⊥(uB - bv)` with `∇^⊥ = (∂y, -∂x)`.
/// Four real FFT pairs per call; inputs are assumed band-limited.
pub struct FluxEvaluator<T: Scalar> {
    grid: Grid2D<T>,
    t: Transformer<T>,
    xi: Vec<T>,
    eta: Vec<T>,
    band_x: Vec<bool>,
    band_y: Vec<bool>,
    phys: [Vec<T>; 4],
    quad: [Vec<T>; 4],
    flux: [Vec<Complex<T>>; 4],
}

impl<T: Scalar> FluxEvaluator<T> {
    pub fn new(grid: Grid2D<T>) -> Self {
        let (xi, eta) = grid.odd_axes();
        let (band_x, band_y) = grid.band_axes();
        let n = grid.len();
        Self {
            grid,
            t: Transformer::new(grid),
            xi,
            eta,
            band_x,
            band_y,
            phys: std::array::from_fn(|_| vec![T::zero(); n]),
            quad: std::array::from_fn(|_| vec![T::zero(); n]),
            flux: std::array::from_fn(|_| vec![Complex::default(); n]),
        }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    pub fn eval(&mut self, s: &StateSpectral<T>) -> Forcing<T> {
        let mut out = Forcing::zeros(self.grid);
        self.eval_into(s, &mut out);
        out
    }

    /// [`Self::eval`] into an existing forcing on the same grid.
    pub fn eval_into(&mut self, s: &StateSpectral<T>, out: &mut Forcing<T>) {
        let grid = self.grid;
        let [u, v, b, bb] = &mut self.phys;
        self.t.inverse_real_pair_into(s.u.coeffs(), s.v.coeffs(), u, v);
        self.t.inverse_real_pair_into(s.b.coeffs(), s.bb.coeffs(), b, bb);
        let [q1, q2, q3, q4] = &mut self.quad;
        for j in 0..grid.len() {
            q1[j] = u[j] * u[j] - b[j] * b[j];
            q2[j] = u[j] * v[j] - b[j] * bb[j];
            q3[j] = v[j] * v[j] - bb[j] * bb[j];
            q4[j] = u[j] * bb[j] - b[j] * v[j];
        }
        let [c1, c2, c3, c4] = &mut self.flux;
        self.t.forward_real_pair_into(q1, q2, c1, c2);
        self.t.forward_real_pair_into(q3, q4, c3, c4);
        let Forcing { f1, f2, g1, g2 } = out;
        let (f1, f2, g1, g2) = (f1.coeffs_mut(), f2.coeffs_mut(), g1.coeffs_mut(), g2.coeffs_mut());
        let zero = Complex::default();
        for (iy, &eta) in self.eta.iter().enumerate() {
            for (jx, &xi) in self.xi.iter().enumerate() {
                let k = iy * grid.nx() + jx;
                if !(self.band_y[iy] && self.band_x[jx]) {
                    (f1[k], f2[k], g1[k], g2[k]) = (zero, zero, zero, zero);
                    continue;
                }
                let (ix, ie) = (Complex::new(T::zero(), xi), Complex::new(T::zero(), eta));
                let (a, b) = (-(ix * c1[k] + ie * c2[k]), -(ix * c2[k] + ie * c3[k]));
                let r2 = xi * xi + eta * eta;
                let d = if r2 == T::zero() { zero } else { (a * xi + b * eta) / r2 };
                f1[k] = a - d * xi;
                f2[k] = b - d * eta;
                g1[k] = ie * c4[k];
                g2[k] = -(ix * c4[k]);
            }
        }
    }
}
