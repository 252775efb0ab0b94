use super::forcing::Forcing;
use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::StateSpectral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Drop the nonlinearity; the run is then the linear semigroup.
    pub linear_only: bool,
    /// Keep the forcing at every sample (needed for Duhamel reconstruction).
    pub record_forcing: bool,
}

/// Samples of a run. `times[0] = 0`; `forcings` is empty unless recorded.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Scalar> {
    pub dt: f64,
    pub linear_only: bool,
    pub times: Vec<f64>,
    pub states: Vec<StateSpectral<T>>,
    pub forcings: Vec<Forcing<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let tol = 1e-9 * self.dt.max(1e-300);
        self.times.iter().position(|&s| (s - t).abs() <= tol).ok_or(Error::TimeNotSampled(t))
    }

    pub fn state_at(&self, t: f64) -> Result<&StateSpectral<T>> {
        Ok(&self.states[self.index_of(t)?])
    }
}

/// Receives run samples as they are produced.
pub trait Observer<T: Scalar> {
    /// Called at each sample time (step indices from [`sample_steps`]).
    fn sample(&mut self, t: f64, state: &StateSpectral<T>, forcing: &Forcing<T>) -> Result<()>;

    /// Called after every step, including the initial state at `t = 0`.
    fn step(&mut self, _t: f64, _state: &StateSpectral<T>) -> Result<()> {
        Ok(())
    }
}

/// Step indices of the requested times (nearest step, deduplicated, always including 0).
pub fn sample_steps(t_final: f64, dt: f64, times: &[f64]) -> Result<(usize, Vec<usize>)> {
    if !(t_final >= 0.0) {
        return Err(Error::NegativeTime(t_final));
    }
    if !(dt > 0.0) {
        return Err(Error::StepTooLarge { dt, dt_max: 0.1 });
    }
    let n = (t_final / dt).round() as usize;
    let mut idx = vec![0usize];
    for &t in times {
        if t < 0.0 || t > t_final * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!("sample time {t} outside [0, {t_final}]")));
        }
        idx.push(((t / dt).round() as usize).min(n));
    }
    idx.sort_unstable();
    idx.dedup();
    Ok((n, idx))
}

/// Integrates with fixed `dt` up to `round(T/dt)` steps, feeding samples to `obs`.
pub fn run_observed<T: Scalar, O: Observer<T>>(
    initial: &StateSpectral<T>,
    t_final: f64,
    dt: f64,
    times: &[f64],
    linear_only: bool,
    obs: &mut O,
) -> Result<()> {
    initial.validate()?;
    let (n, samples) = sample_steps(t_final, dt, times)?;
    let mut stepper = Stepper::new(*initial.grid(), T::lit(dt), linear_only)?;
    let mut s = initial.clone();
    s.truncate();
    let mut n0 = Forcing::zeros(*s.grid());
    let mut next_sample = 0;
    for j in 0..=n {
        let t = j as f64 * dt;
        if !s.is_finite() {
            return Err(Error::NonFiniteState(t));
        }
        obs.step(t, &s)?;
        let sampled = next_sample < samples.len() && samples[next_sample] == j;
        if j == n && !sampled {
            break;
        }
        stepper.forcing_into(&s, &mut n0);
        if sampled {
            obs.sample(t, &s, &n0)?;
            next_sample += 1;
        }
        if j == n {
            break;
        }
        let limit = super::stepper::dt_max(&s);
        if dt > limit {
            return Err(Error::StepTooLarge { dt, dt_max: limit });
        }
        stepper.advance(&mut s, &n0)?;
    }
    Ok(())
}

struct Recorder<T: Scalar> {
    keep_forcing: bool,
    traj: Trajectory<T>,
}

impl<T: Scalar> Observer<T> for Recorder<T> {
    fn sample(&mut self, t: f64, state: &StateSpectral<T>, forcing: &Forcing<T>) -> Result<()> {
        self.traj.times.push(t);
        self.traj.states.push(state.clone());
        if self.keep_forcing {
            self.traj.forcings.push(forcing.clone());
        }
        Ok(())
    }
}

pub fn run_with<T: Scalar>(
    initial: &StateSpectral<T>,
    t_final: f64,
    dt: f64,
    times: &[f64],
    opts: RunOptions,
) -> Result<Trajectory<T>> {
    let mut rec = Recorder {
        keep_forcing: opts.record_forcing,
        traj: Trajectory { dt, linear_only: opts.linear_only, times: vec![], states: vec![], forcings: vec![] },
    };
    run_observed(initial, t_final, dt, times, opts.linear_only, &mut rec)?;
    Ok(rec.traj)
}

/// Nonlinear run recording states and forcings at the sample times.
pub fn run<T: Scalar>(initial: &StateSpectral<T>, t_final: f64, dt: f64, times: &[f64]) -> Result<Trajectory<T>> {
    run_with(initial, t_final, dt, times, RunOptions { linear_only: false, record_forcing: true })
}

/// `n + 1` equally spaced times on `[0, t]`.
pub fn uniform_times(t: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|j| t * j as f64 / n as f64).collect()
}

/// `t = 0` plus `n` log-spaced times in `[t_lo, t_hi]`.
pub fn log_times(n: usize, t_lo: f64, t_hi: f64) -> Vec<f64> {
    let mut ts = vec![0.0];
    if n == 1 {
        ts.push(t_lo);
    } else {
        ts.extend((0..n).map(|j| (t_lo.ln() + (t_hi / t_lo).ln() * j as f64 / (n - 1) as f64).exp()));
    }
    ts
}
