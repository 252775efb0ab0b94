use super::forcing::Forcing;
use super::run::{Observer, Trajectory};
use crate::analysis::norms::{hs_inner, hs_vec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{apply_symbol, symbols, StateSpectral};

/// `E = ‖u⃗‖² + ‖b⃗‖²` and the dissipation `D = 2‖∇u⃗‖²` at one time, so that `dE/dt = -D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub t: f64,
    pub energy: f64,
    pub dissipation: f64,
}

impl EnergySample {
    pub fn of<T: Scalar>(t: f64, s: &StateSpectral<T>) -> Self {
        Self { t, energy: s.energy().to_f64_lossy(), dissipation: 2.0 * s.velocity_enstrophy().to_f64_lossy() }
    }
}

/// Collects an [`EnergySample`] after every step.
#[derive(Debug, Clone, Default)]
pub struct EnergyLog {
    pub samples: Vec<EnergySample>,
}

impl<T: Scalar> Observer<T> for EnergyLog {
    fn sample(&mut self, _t: f64, _s: &StateSpectral<T>, _f: &Forcing<T>) -> Result<()> {
        Ok(())
    }

    fn step(&mut self, t: f64, s: &StateSpectral<T>) -> Result<()> {
        self.samples.push(EnergySample::of(t, s));
        Ok(())
    }
}

/// `|dE/dt + D| / D` at interior samples, with the three-point centred
/// difference on a possibly nonuniform grid. Falls back to the absolute
/// residual where `D = 0`.
pub fn energy_residuals(samples: &[EnergySample]) -> Result<Vec<(f64, f64)>> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: samples.len() });
    }
    Ok(samples
        .windows(3)
        .map(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            let (h1, h2) = (b.t - a.t, c.t - b.t);
            let de =
                -h2 / (h1 * (h1 + h2)) * a.energy + (h2 - h1) / (h1 * h2) * b.energy + h1 / (h2 * (h1 + h2)) * c.energy;
            let r = (de + b.dissipation).abs();
            (b.t, if b.dissipation > 0.0 { r / b.dissipation } else { r })
        })
        .collect())
}

/// [`energy_residuals`] over the sampled states of a trajectory.
pub fn energy_balance<T: Scalar>(traj: &Trajectory<T>) -> Result<Vec<(f64, f64)>> {
    let samples: Vec<EnergySample> =
        traj.times.iter().zip(&traj.states).map(|(&t, s)| EnergySample::of(t, s)).collect();
    energy_residuals(&samples)
}

/// `‖u⃗‖²_{Hᴺ} + ‖b⃗‖²_{Hᴺ} - ¼(u⃗ | ∂x b⃗)_{H^{N-1}}`
pub fn modified_energy<T: Scalar>(state: &StateSpectral<T>, n: u32) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidParameter("regularity index must be at least 1".into()));
    }
    let nn = T::lit(n as f64);
    let hu = hs_vec(&state.u, &state.v, nn);
    let hb = hs_vec(&state.b, &state.bb, nn);
    Ok(hu * hu + hb * hb - modified_energy_cross(state, n)? / T::lit(4.0))
}

/// `(u⃗ | ∂x b⃗)_{H^{N-1}}`
pub fn modified_energy_cross<T: Scalar>(state: &StateSpectral<T>, n: u32) -> Result<T> {
    let s = T::lit(n as f64 - 1.0);
    let dxb = apply_symbol(&state.b, symbols::dx())?;
    let dxbb = apply_symbol(&state.bb, symbols::dx())?;
    Ok(hs_inner(&state.u, &dxb, s) + hs_inner(&state.v, &dxbb, s))
}
