use num_complex::Complex;

use super::forcing::{FluxEvaluator, Forcing};
use crate::analysis::norms::fl;
use crate::error::{Error, Result};
use crate::propagator::SemigroupTable;
use crate::scalar::Scalar;
use crate::spectral::{Grid2D, StateSpectral};

/// Largest admissible step: `min(0.5 / (max FL¹ · k_max), 0.1)` over the four
/// fields, with `k_max` the largest retained wavenumber. Diffusion and the
/// Alfvén coupling are integrated exactly and do not enter.
pub fn dt_max<T: Scalar>(state: &StateSpectral<T>) -> f64 {
    let amp = state.fields().iter().map(|f| fl(f, T::one()).to_f64_lossy()).fold(0.0, f64::max);
    let k = state.grid().k_max_retained().to_f64_lossy();
    if amp * k == 0.0 {
        0.1
    } else {
        (0.5 / (amp * k)).min(0.1)
    }
}

/// Exponential Heun (Lawson RK2) with the exact semigroup as linear part:
///
/// `s* = E(s + dt N(s))`, `s⁺ = E(s + dt/2 N(s)) + dt/2 N(s*)`, `E = e^{dt A}`,
///
/// followed by truncation to the 2/3 band and Leray projection.
pub struct Stepper<T: Scalar> {
    dt: T,
    table: SemigroupTable<T>,
    eval: FluxEvaluator<T>,
    linear_only: bool,
    pred: StateSpectral<T>,
    n1: Forcing<T>,
}

fn axpy<T: Scalar>(y: &mut [Complex<T>], a: T, x: &[Complex<T>]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = *yi + *xi * a;
    }
}

fn axpy_forcing<T: Scalar>(y: &mut StateSpectral<T>, a: T, x: &Forcing<T>) {
    for (yf, xf) in y.fields_mut().into_iter().zip(x.fields()) {
        axpy(yf.coeffs_mut(), a, xf.coeffs());
    }
}

impl<T: Scalar> Stepper<T> {
    pub fn new(grid: Grid2D<T>, dt: T, linear_only: bool) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::StepTooLarge { dt: dt.to_f64_lossy(), dt_max: 0.1 });
        }
        Ok(Self {
            dt,
            table: SemigroupTable::new(grid, dt)?,
            eval: FluxEvaluator::new(grid),
            linear_only,
            pred: StateSpectral::zeros(grid),
            n1: Forcing::zeros(grid),
        })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn grid(&self) -> &Grid2D<T> {
        self.eval.grid()
    }

    /// `N(s)`; zero when the nonlinearity is switched off.
    pub fn forcing(&mut self, s: &StateSpectral<T>) -> Forcing<T> {
        let mut out = Forcing::zeros(*s.grid());
        self.forcing_into(s, &mut out);
        out
    }

    /// [`Self::forcing`] into an existing buffer.
    pub fn forcing_into(&mut self, s: &StateSpectral<T>, out: &mut Forcing<T>) {
        if self.linear_only {
            for f in [&mut out.f1, &mut out.f2, &mut out.g1, &mut out.g2] {
                f.coeffs_mut().fill(Complex::default());
            }
        } else {
            self.eval.eval_into(s, out);
        }
    }

    fn check(&self, s: &StateSpectral<T>) -> Result<()> {
        if s.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        let limit = dt_max(s);
        let dt = self.dt.to_f64_lossy();
        if dt > limit {
            return Err(Error::StepTooLarge { dt, dt_max: limit });
        }
        Ok(())
    }

    /// One step from `s`.
    pub fn step(&mut self, s: &StateSpectral<T>) -> Result<StateSpectral<T>> {
        self.check(s)?;
        let n0 = self.forcing(s);
        self.step_with(s, &n0)
    }

    /// One step from `s` given `N(s)` already evaluated.
    pub fn step_with(&mut self, s: &StateSpectral<T>, n0: &Forcing<T>) -> Result<StateSpectral<T>> {
        let mut out = s.clone();
        self.advance(&mut out, n0)?;
        Ok(out)
    }

    /// [`Self::step_with`] in place.
    pub fn advance(&mut self, s: &mut StateSpectral<T>, n0: &Forcing<T>) -> Result<()> {
        if s.grid() != self.grid() || n0.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        if !self.linear_only {
            let dt = self.dt;
            let half = dt * T::lit(0.5);
            for (p, f) in self.pred.fields_mut().into_iter().zip(s.fields()) {
                p.coeffs_mut().copy_from_slice(f.coeffs());
            }
            axpy_forcing(&mut self.pred, dt, n0);
            self.table.apply_in_place(&mut self.pred)?;
            self.eval.eval_into(&self.pred, &mut self.n1);
            axpy_forcing(s, half, n0);
            self.table.apply_in_place(s)?;
            axpy_forcing(s, half, &self.n1);
        } else {
            self.table.apply_in_place(s)?;
        }
        s.truncate();
        s.project();
        Ok(())
    }
}

/// One step of size `dt`.
pub fn step<T: Scalar>(state: &StateSpectral<T>, dt: T) -> Result<StateSpectral<T>> {
    Stepper::new(*state.grid(), dt, false)?.step(state)
}
