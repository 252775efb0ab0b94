//! The full perturbation system around `(0, 1)`: forcings, time stepping,
//! trajectories and their Duhamel and energy cross-checks.

pub mod duhamel;
pub mod energy;
pub mod forcing;
pub mod init;
pub mod run;
pub mod stepper;

pub use duhamel::duhamel_reconstruct;
pub use energy::{energy_balance, energy_residuals, modified_energy, EnergyLog, EnergySample};
pub use forcing::{forcings, pressure, rewrite_residuals, FluxEvaluator, Forcing};
pub use init::{gaussian_state, random_band_state};
pub use run::{log_times, run, run_observed, run_with, uniform_times, Observer, RunOptions, Trajectory};
pub use stepper::{dt_max, step, Stepper};

use crate::scalar::Scalar;
use crate::spectral::{SpectralField, StateSpectral};

/// Reflection `x → -x`: `(u, v, b, B)(x, y) → (-u, v, b, -B)(-x, y)`, which maps solutions to solutions.
pub fn mirror_x<T: Scalar>(s: &StateSpectral<T>) -> StateSpectral<T> {
    let grid = *s.grid();
    let flip = |f: &SpectralField<T>, sign: T| {
        let c = f.coeffs();
        let out = (0..grid.len())
            .map(|k| {
                let (kx, ky) = (grid.kx_int(k % grid.nx()), grid.ky_int(k / grid.nx()));
                c[grid.flat_index(-kx, ky)] * sign
            })
            .collect();
        SpectralField::new(grid, out).expect("sizes agree")
    };
    let (p, m) = (T::one(), -T::one());
    StateSpectral { u: flip(&s.u, m), v: flip(&s.v, p), b: flip(&s.b, p), bb: flip(&s.bb, m) }
}
