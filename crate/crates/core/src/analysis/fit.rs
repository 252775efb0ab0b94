use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::Grid2D;

/// `⟨t⟩ = √(1 + t²)`
pub fn bracket(t: f64) -> f64 {
    t.hypot(1.0)
}

/// Time coordinate of the log-log fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Abscissa {
    /// `log⟨t⟩`
    #[default]
    Bracket,
    /// `log t`
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r2: f64,
    pub t1: f64,
    pub t2: f64,
    pub n_points: usize,
}

pub const MIN_FIT_POINTS: usize = 8;

/// Least-squares power law on `(log⟨t⟩, log value)` over samples with `t ∈ [t1, t2]`.
pub fn fit_decay(series: &[(f64, f64)], window: (f64, f64)) -> Result<DecayFit> {
    fit_decay_with(series, window, Abscissa::Bracket)
}

pub fn fit_decay_with(series: &[(f64, f64)], window: (f64, f64), abscissa: Abscissa) -> Result<DecayFit> {
    let (t1, t2) = window;
    // endpoints produced by exp/ln round trips are kept
    let slack = 1e-12 * t2.abs().max(1.0);
    let pts: Vec<(f64, f64)> = series.iter().copied().filter(|&(t, _)| t >= t1 - slack && t <= t2 + slack).collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::WindowTooSmall { needed: MIN_FIT_POINTS, got: pts.len() });
    }
    if let Some(&(t, value)) = pts.iter().find(|&&(_, v)| !(v > 0.0)) {
        return Err(Error::NonPositiveValue { t, value });
    }
    let xs: Vec<f64> = pts
        .iter()
        .map(|&(t, _)| match abscissa {
            Abscissa::Bracket => bracket(t).ln(),
            Abscissa::Time => t.ln(),
        })
        .collect();
    let ys: Vec<f64> = pts.iter().map(|&(_, v)| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - exponent * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r2 = if ss_res == 0.0 || ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(DecayFit { exponent, intercept, r2, t1, t2, n_points: pts.len() })
}

pub const DEFAULT_T_MIN: f64 = 2.0;
pub const DEFAULT_T_MAX_FACTOR: f64 = 0.2;

/// `(t_min, t_max)` with `t_max = 0.2 (L/2π)²` for the shorter box side.
pub fn validity_window<T: Scalar>(grid: &Grid2D<T>) -> (f64, f64) {
    validity_window_with(grid, DEFAULT_T_MIN, DEFAULT_T_MAX_FACTOR)
}

pub fn validity_window_with<T: Scalar>(grid: &Grid2D<T>, t_min: f64, factor: f64) -> (f64, f64) {
    let l = grid.lx().min(grid.ly()).to_f64_lossy();
    (t_min, factor * (l / std::f64::consts::TAU).powi(2))
}
