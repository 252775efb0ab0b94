//! Seeded `(ξ⃗, t)` sweeps checking the closed-form multipliers against the
//! matrix-exponential oracle, their trace/determinant invariants, and the
//! differential identities `∂ₜM̂₂ = iξM̂₁`, `∂ₜM̂₁ = iξM̂₃`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::oracle::{eigenvalues_oracle, matrix_exponential_oracle_shifted, max_entry};
use super::{derivative_identity_residuals, eigenvalues, multipliers_shifted};
use crate::error::Result;

pub const DEFAULT_SEED: u64 = 13;
pub const DEFAULT_RANDOM: usize = 100_000;
pub const DEFAULT_NEAR: usize = 1_000;
/// `|ξ⃗|` range of the random part, log-uniform.
pub const R_RANGE: (f64, f64) = (1e-3, 4.0);
pub const T_MAX: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub xi: f64,
    pub eta: f64,
    pub t: f64,
    /// Drawn within 1e-6 of the eigenvalue-collision curve `|ξ⃗|² = 2|ξ|`.
    pub near_degenerate: bool,
}

/// `n_random` log-uniform points plus `n_near` points hugging the collision curve.
pub fn sweep_points(seed: u64, n_random: usize, n_near: usize) -> Vec<SweepPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_random + n_near);
    let (lo, hi) = (R_RANGE.0.log10(), R_RANGE.1.log10());
    for _ in 0..n_random {
        let r = 10f64.powf(rng.gen_range(lo..hi));
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        out.push(SweepPoint {
            xi: r * th.cos(),
            eta: r * th.sin(),
            t: rng.gen_range(0.0..T_MAX),
            near_degenerate: false,
        });
    }
    for _ in 0..n_near {
        let r: f64 = rng.gen_range(1e-3..2.0);
        let xi = r * r / 2.0;
        let eta = (r * r - xi * xi).max(0.0).sqrt() * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let xi = if rng.gen_bool(0.5) { xi } else { -xi } + rng.gen_range(-1e-6..1e-6);
        out.push(SweepPoint { xi, eta, t: rng.gen_range(0.0..T_MAX), near_degenerate: true });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierCheck {
    pub point: SweepPoint,
    /// Largest entrywise distance to the oracle over the oracle's largest entry.
    pub oracle: f64,
    /// `|tr M - e^{λ₊t} - e^{λ₋t}|` over the size of the terms.
    pub trace: f64,
    /// `|det M - e^{-|ξ⃗|²t}|` over the size of the terms.
    pub det: f64,
}

/// All comparisons run on `e^{κt}M` with `κ = -Re λ₊` so that nothing underflows.
pub fn check_multiplier(p: SweepPoint) -> Result<MultiplierCheck> {
    let SweepPoint { xi, eta, t, .. } = p;
    let (lp, lm) = eigenvalues_oracle(xi, eta);
    let kappa = -lp.re.max(lm.re);
    let m = multipliers_shifted(xi, eta, t, kappa)?;
    let mat = m.as_matrix();
    let o = matrix_exponential_oracle_shifted(xi, eta, t, kappa)?;
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((mat[i][j] - o[i][j]).norm());
        }
    }
    let e = eigenvalues(xi, eta);
    let k = Complex::new(kappa, 0.0);
    let (ep, em) = (((e.lam_plus + k) * t).exp(), ((e.lam_minus + k) * t).exp());
    let tr = m.m2 + m.m3;
    let tr_scale = m.m2.norm() + m.m3.norm() + ep.norm() + em.norm();
    let det = m.m2 * m.m3 - m.m1 * m.m1;
    let want = ((2.0 * kappa - xi * xi - eta * eta) * t).exp();
    let det_scale = (m.m2 * m.m3).norm() + (m.m1 * m.m1).norm() + want;
    Ok(MultiplierCheck {
        point: p,
        oracle: worst / max_entry(&o),
        trace: (tr - (ep + em)).norm() / tr_scale,
        det: (det - want).norm() / det_scale,
    })
}

pub fn check_multipliers(points: &[SweepPoint]) -> Result<Vec<MultiplierCheck>> {
    points.par_iter().map(|&p| check_multiplier(p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub point: SweepPoint,
    /// Residuals `(|∂ₜM̂₂ - iξM̂₁|, |∂ₜM̂₁ - iξM̂₃|)` with step `h`.
    pub at_h: (f64, f64),
    /// The same with step `h/2`.
    pub at_half: (f64, f64),
}

impl IdentityCheck {
    pub fn worst(&self) -> f64 {
        self.at_h.0.max(self.at_h.1)
    }
}

/// Centred-difference residuals at `h` and `h/2`; times below `h` are moved up to `h`.
pub fn check_identities(points: &[SweepPoint], h: f64) -> Result<Vec<IdentityCheck>> {
    points
        .par_iter()
        .map(|&p| {
            let t = p.t.max(h);
            let point = SweepPoint { t, ..p };
            Ok(IdentityCheck {
                point,
                at_h: derivative_identity_residuals(p.xi, p.eta, t, h)?,
                at_half: derivative_identity_residuals(p.xi, p.eta, t, h / 2.0)?,
            })
        })
        .collect()
}

/// `max residual(h) / max residual(h/2)` over the sweep.
pub fn richardson_ratio(checks: &[IdentityCheck]) -> f64 {
    let a = checks.iter().map(|c| c.at_h.0.max(c.at_h.1)).fold(0.0, f64::max);
    let b = checks.iter().map(|c| c.at_half.0.max(c.at_half.1)).fold(0.0, f64::max);
    a / b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_reproducible() {
        let a = sweep_points(1, 50, 10);
        assert_eq!(a, sweep_points(1, 50, 10));
        assert_ne!(a, sweep_points(2, 50, 10));
        assert_eq!(a.iter().filter(|p| p.near_degenerate).count(), 10);
        for p in &a[50..] {
            let r2 = p.xi * p.xi + p.eta * p.eta;
            assert!((r2 - 2.0 * p.xi.abs()).abs() < 1e-5);
        }
    }

    #[test]
    fn small_sweep_is_clean() {
        let pts = sweep_points(3, 2000, 200);
        for c in check_multipliers(&pts).unwrap() {
            assert!(c.oracle <= 1e-9 && c.trace <= 1e-10 && c.det <= 1e-10, "{c:?}");
        }
        let ids = check_identities(&pts, 1e-4).unwrap();
        assert!(ids.iter().all(|c| c.worst() <= 1e-6));
        assert!((3.0..=5.0).contains(&richardson_ratio(&ids)));
    }
}
