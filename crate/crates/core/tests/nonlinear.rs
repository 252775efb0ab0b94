use std::f64::consts::PI;

use mhd2d::analysis::norms::hs_vec;
use mhd2d::nonlinear::energy::{energy_residuals, modified_energy, EnergyLog, EnergySample};
use mhd2d::nonlinear::{
    duhamel_reconstruct, energy_balance, mirror_x, random_band_state, rewrite_residuals, run, run_observed, run_with,
    step, uniform_times, RunOptions,
};
use mhd2d::propagator::apply_semigroup;
use mhd2d::spectral::{forward_transform, Grid2D, PhysicalField, SpectralField, StateSpectral};
use mhd2d::Error;

fn shear_mode(g: Grid2D<f64>, eta: f64, t: f64) -> StateSpectral<f64> {
    let decay = (-eta * eta * t).exp();
    let u = forward_transform(&PhysicalField::from_fn(g, |_, y| 0.3 * decay * (eta * y).sin()));
    let z = SpectralField::zeros(g);
    StateSpectral::new(u, z.clone(), z.clone(), z).unwrap()
}

fn band(n: usize, l: f64, seed: u64, amp: f64) -> StateSpectral<f64> {
    random_band_state(Grid2D::square(n, l).unwrap(), seed, amp, 4).unwrap()
}

#[test]
fn shear_mode_decays_exactly() {
    let g = Grid2D::square(32, 2.0 * PI).unwrap();
    let s0 = shear_mode(g, 1.0, 0.0);
    let traj = run(&s0, 1.0, 0.01, &[1.0]).unwrap();
    let exact = shear_mode(g, 1.0, 1.0);
    assert!(traj.state_at(1.0).unwrap().relative_distance(&exact) < 1e-12);
}

#[test]
fn rejects_bad_steps() {
    let s = band(16, 10.0, 1, 0.1);
    assert!(matches!(step(&s, 0.0), Err(Error::StepTooLarge { .. })));
    assert!(matches!(step(&s, -1e-3), Err(Error::StepTooLarge { .. })));
    let loud = band(16, 10.0, 1, 100.0);
    assert!(matches!(step(&loud, 0.05), Err(Error::StepTooLarge { .. })));
    assert!(matches!(run(&loud, 1.0, 0.05, &[]), Err(Error::StepTooLarge { .. })));
}

#[test]
fn zero_length_run_returns_the_initial_state() {
    let s = band(16, 10.0, 2, 0.1);
    let traj = run(&s, 0.0, 0.01, &[0.0]).unwrap();
    assert_eq!(traj.times, vec![0.0]);
    assert_eq!(traj.states[0], s);
}

#[test]
fn zero_state_is_a_fixed_point() {
    let s = StateSpectral::<f64>::zeros(Grid2D::square(16, 10.0).unwrap());
    let traj = run(&s, 0.5, 0.01, &[0.5]).unwrap();
    assert!(traj.states.iter().all(|x| *x == s));
}

#[test]
fn linear_only_matches_the_semigroup() {
    let s = band(32, 10.0, 3, 0.5);
    let traj = run_with(&s, 2.0, 0.01, &[0.5, 2.0], RunOptions { linear_only: true, record_forcing: false }).unwrap();
    for &t in &[0.5, 2.0] {
        let exact = apply_semigroup(&s, t).unwrap();
        assert!(traj.state_at(t).unwrap().relative_distance(&exact) < 1e-12, "t = {t}");
    }
}

#[test]
fn second_order_convergence() {
    let s = band(32, 2.0 * PI, 4, 0.5);
    let t = 0.5;
    let at = |dt: f64| run_with(&s, t, dt, &[t], RunOptions::default()).unwrap().states.pop().unwrap();
    let dt = 0.01;
    let reference = at(dt / 64.0);
    let e1 = at(dt).relative_distance(&reference);
    let e2 = at(dt / 2.0).relative_distance(&reference);
    let ratio = e1 / e2;
    assert!((3.4..=4.6).contains(&ratio), "ratio {ratio} ({e1:e}, {e2:e})");
}

#[test]
fn steps_stay_divergence_free_and_real() {
    let s = band(32, 10.0, 5, 1.0);
    let traj = run(&s, 1.0, 0.01, &uniform_times(1.0, 10)).unwrap();
    for x in &traj.states {
        x.validate().unwrap();
        assert!(x.divergence_defect() < 1e-12);
    }
}

#[test]
fn energy_is_non_increasing() {
    let s = band(32, 10.0, 6, 1.0);
    let traj = run(&s, 2.0, 0.005, &uniform_times(2.0, 40)).unwrap();
    for w in traj.states.windows(2) {
        assert!(w[1].energy() <= w[0].energy() * (1.0 + 1e-12));
    }
}

#[test]
fn mirror_commutes_with_evolution() {
    let s = band(32, 10.0, 7, 1.0);
    let a = mirror_x(&run(&s, 1.0, 0.01, &[1.0]).unwrap().states[1]);
    let b = run(&mirror_x(&s), 1.0, 0.01, &[1.0]).unwrap().states.pop().unwrap();
    assert!(a.relative_distance(&b) < 1e-10);
    assert!(mirror_x(&mirror_x(&s)) == s);
}

#[test]
fn forcing_rewrites_agree() {
    let s = band(64, 10.0, 8, 1.0);
    let (f2, g2) = rewrite_residuals(&s);
    assert!(f2 < 1e-11, "{f2:e}");
    assert!(g2 < 1e-11, "{g2:e}");
}

#[test]
fn duhamel_at_zero_is_the_initial_state() {
    let s = band(16, 10.0, 9, 0.1);
    let traj = run(&s, 0.1, 0.01, &uniform_times(0.1, 10)).unwrap();
    assert_eq!(duhamel_reconstruct(&traj, 0.0).unwrap(), s);
    assert!(matches!(duhamel_reconstruct(&traj, 0.055), Err(Error::TimeNotSampled(_))));
}

#[test]
fn duhamel_is_exact_without_forcing() {
    let s = band(32, 10.0, 10, 0.5);
    let traj = run_with(&s, 1.0, 0.01, &uniform_times(1.0, 20), RunOptions { linear_only: true, record_forcing: true })
        .unwrap();
    let r = duhamel_reconstruct(&traj, 1.0).unwrap();
    assert!(r.relative_distance(traj.state_at(1.0).unwrap()) < 1e-12);
}

#[test]
fn duhamel_matches_the_stepped_state() {
    let s = band(64, 20.0, 11, 1e-2);
    let traj = run(&s, 1.0, 1e-3, &uniform_times(1.0, 200)).unwrap();
    let r = duhamel_reconstruct(&traj, 1.0).unwrap();
    let err = r.relative_distance(traj.state_at(1.0).unwrap());
    assert!(err <= 1e-4, "{err:e}");
}

#[test]
fn duhamel_needs_recorded_forcing() {
    let s = band(16, 10.0, 12, 0.1);
    let traj = run_with(&s, 0.1, 0.01, &[0.1], RunOptions::default()).unwrap();
    assert!(duhamel_reconstruct(&traj, 0.1).is_err());
}

#[test]
fn shear_mode_energy_balance() {
    let g = Grid2D::square(32, 20.0 * PI).unwrap();
    let s0 = shear_mode(g, 0.1, 0.0);
    let mut log = EnergyLog::default();
    run_observed(&s0, 1.0, 1e-3, &[], false, &mut log).unwrap();
    let worst = energy_residuals(&log.samples).unwrap().iter().map(|r| r.1).fold(0.0, f64::max);
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn nonlinear_energy_balance_converges() {
    let s = band(32, 10.0, 13, 0.5);
    let worst = |dt: f64| {
        let mut log = EnergyLog::default();
        run_observed(&s, 0.5, dt, &[], false, &mut log).unwrap();
        energy_residuals(&log.samples).unwrap().iter().map(|r| r.1).fold(0.0, f64::max)
    };
    let (a, b) = (worst(4e-3), worst(2e-3));
    assert!(b <= 1e-3, "{b:e}");
    assert!((3.0..=5.0).contains(&(a / b)), "ratio {}", a / b);
}

#[test]
fn energy_balance_needs_three_samples() {
    let s = band(16, 10.0, 14, 0.1);
    let traj = run(&s, 0.1, 0.01, &[0.1]).unwrap();
    assert!(matches!(energy_balance(&traj), Err(Error::TooFewSamples { needed: 3, got: 2 })));
    let pts = [EnergySample { t: 0.0, energy: 1.0, dissipation: 0.0 }];
    assert!(energy_residuals(&pts).is_err());
}

#[test]
fn modified_energy_is_comparable_to_sobolev_energy() {
    for seed in 0..5 {
        let s = band(32, 10.0, 20 + seed, 1.0);
        for n in [1u32, 2, 4, 8] {
            let nn = n as f64;
            let sum = hs_vec(&s.u, &s.v, nn).powi(2) + hs_vec(&s.b, &s.bb, nn).powi(2);
            let e = modified_energy(&s, n).unwrap();
            assert!(e >= 0.5 * sum && e <= 2.0 * sum, "n = {n}: {e} vs {sum}");
        }
    }
    assert!(modified_energy(&band(16, 10.0, 1, 0.1), 0).is_err());
}
