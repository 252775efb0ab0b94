use super::run::Trajectory;
use crate::error::{Error, Result};
use crate::propagator::SemigroupTable;
use crate::scalar::Scalar;
use crate::spectral::StateSpectral;

/// Rebuilds the state at sample time `t` from the initial state and the
/// recorded forcings:
///
/// `s(t) = e^{tA} s₀ + ∫₀ᵗ e^{(t-τ)A} N(τ) dτ`,
///
/// with the trapezoid rule on the sample grid. The velocity rows read
/// `u⃗(t) = M₃u⃗₀ + M₁b⃗₀ + ∫ M₃F⃗ + ∫ M₁G⃗`, the magnetic rows the analogue with `M₁, M₂`.
pub fn duhamel_reconstruct<T: Scalar>(traj: &Trajectory<T>, t: f64) -> Result<StateSpectral<T>> {
    let m = traj.index_of(t)?;
    if traj.forcings.len() != traj.times.len() {
        return Err(Error::InvalidParameter("trajectory was recorded without forcings".into()));
    }
    let grid = *traj.states[0].grid();
    let t_m = traj.times[m];
    let mut out = SemigroupTable::new(grid, T::lit(t_m))?.apply(&traj.states[0])?;
    for j in 0..=m {
        let left = if j > 0 { traj.times[j] - traj.times[j - 1] } else { 0.0 };
        let right = if j < m { traj.times[j + 1] - traj.times[j] } else { 0.0 };
        let w = T::lit(0.5 * (left + right));
        if w == T::zero() {
            continue;
        }
        let lag = (t_m - traj.times[j]).max(0.0);
        let pushed = SemigroupTable::new(grid, T::lit(lag))?.apply(&traj.forcings[j].clone().into_state())?;
        for (o, p) in out.fields_mut().into_iter().zip(pushed.fields()) {
            *o = o.add_scaled(w, p)?;
        }
    }
    Ok(out)
}
