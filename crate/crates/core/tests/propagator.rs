use mhd2d::propagator::oracle::{
    eigenvalues_oracle, matrix_exponential_oracle, matrix_exponential_oracle_shifted, max_entry, rk4_oracle,
};
use mhd2d::propagator::{apply_semigroup, eigenvalues, multipliers, multipliers_shifted, state_multipliers, Regime};
use mhd2d::spectral::{
    apply_symbol, forward_transform, lp_project, symbols, Grid2D, LpKind, PhysicalField, StateSpectral,
};
use mhd2d::tolerances;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample_point(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let r = 10f64.powf(rng.gen_range(-3.0..4f64.log10()));
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    (r * th.cos(), r * th.sin(), rng.gen_range(0.0..100.0))
}

fn near_degenerate(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let r: f64 = rng.gen_range(1e-3..2.0);
    let xi = r * r / 2.0;
    let eta = (r * r - xi * xi).max(0.0).sqrt() * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let xi = if rng.gen_bool(0.5) { xi } else { -xi } + rng.gen_range(-1e-6..1e-6);
    (xi, eta, rng.gen_range(0.0..100.0))
}

/// Entrywise distance of the shifted triple to the shifted oracle, relative to the oracle's largest entry.
fn oracle_defect(xi: f64, eta: f64, t: f64) -> f64 {
    let (lp, lm) = eigenvalues_oracle(xi, eta);
    let kappa = -lp.re.max(lm.re);
    let m = multipliers_shifted(xi, eta, t, kappa).unwrap().as_matrix();
    let o = matrix_exponential_oracle_shifted(xi, eta, t, kappa).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((m[i][j] - o[i][j]).norm());
        }
    }
    worst / max_entry(&o)
}

#[test]
fn eigenpair_trace_and_determinant_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100_000 {
        let (xi, eta, _) = sample_point(&mut rng);
        let e = eigenvalues(xi, eta);
        let r2 = xi * xi + eta * eta;
        let tr = e.lam_plus + e.lam_minus;
        let det = e.lam_plus * e.lam_minus;
        assert!((tr + r2).norm() <= tolerances::EIGEN_IDENTITY * r2, "trace at ({xi}, {eta})");
        let det_scale = (e.lam_plus.norm() * e.lam_minus.norm()).max(xi * xi);
        assert!((det - xi * xi).norm() <= tolerances::EIGEN_IDENTITY * det_scale, "det at ({xi}, {eta})");
        assert!(e.lam_plus.re <= 0.0 && e.lam_minus.re <= 0.0);
    }
}

#[test]
fn eigenvalues_match_characteristic_polynomial() {
    for (xi, eta) in [(1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (0.3, 0.9), (0.01, 0.5)] {
        let e = eigenvalues(xi, eta);
        let (a, b) = eigenvalues_oracle(xi, eta);
        let scale = xi * xi + eta * eta;
        let direct = (e.lam_plus - a).norm().max((e.lam_minus - b).norm());
        let swapped = (e.lam_plus - b).norm().max((e.lam_minus - a).norm());
        assert!(direct.min(swapped) <= 1e-7 * scale, "({xi}, {eta})");
    }
    assert_eq!(eigenvalues(1.0, 0.0).regime, Regime::ComplexBranch);
    assert_eq!(eigenvalues(2.0, 0.0).regime, Regime::Degenerate);
}

#[test]
fn multiplier_trace_and_determinant_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100_000 {
        let (xi, eta, t) = sample_point(&mut rng);
        let e = eigenvalues(xi, eta);
        let kappa = -e.lam_plus.re;
        let m = multipliers_shifted(xi, eta, t, kappa).unwrap();
        let k = Complex::new(kappa, 0.0);
        let ep = ((e.lam_plus + k) * t).exp();
        let em = ((e.lam_minus + k) * t).exp();
        let tr = m.m2 + m.m3;
        let tr_scale = m.m2.norm() + m.m3.norm() + ep.norm() + em.norm();
        assert!((tr - (ep + em)).norm() <= tolerances::MULTIPLIER_IDENTITY * tr_scale, "trace ({xi}, {eta}, {t})");
        let det = m.m2 * m.m3 - m.m1 * m.m1;
        let want = ((2.0 * kappa - xi * xi - eta * eta) * t).exp();
        let det_scale = (m.m2 * m.m3).norm() + (m.m1 * m.m1).norm() + want;
        assert!((det - want).norm() <= tolerances::MULTIPLIER_IDENTITY * det_scale, "det ({xi}, {eta}, {t})");
    }
}

#[test]
fn multipliers_match_matrix_exponential_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let (xi, eta, t) = sample_point(&mut rng);
        worst = worst.max(oracle_defect(xi, eta, t));
    }
    assert!(worst <= tolerances::MULTIPLIER_VS_ORACLE, "worst relative defect {worst:e}");
}

#[test]
fn multipliers_match_oracle_near_collision_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let (xi, eta, t) = near_degenerate(&mut rng);
        worst = worst.max(oracle_defect(xi, eta, t));
    }
    assert!(worst <= tolerances::MULTIPLIER_VS_ORACLE, "worst relative defect {worst:e}");
}

#[test]
fn confluent_point_matches_oracle() {
    let m = multipliers(2.0, 0.0, 1.0).unwrap().as_matrix();
    let o = matrix_exponential_oracle(2.0, 0.0, 1.0).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!((m[i][j] - o[i][j]).norm() < 1e-13);
        }
    }
}

#[test]
fn oracles_agree_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let xi = rng.gen_range(-2.0..2.0);
        let eta = rng.gen_range(-2.0..2.0);
        let t = rng.gen_range(0.0..3.0);
        let a = matrix_exponential_oracle(xi, eta, t).unwrap();
        let b = rk4_oracle(xi, eta, t, 20_000);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).norm() <= 1e-9);
            }
        }
    }
}

#[test]
fn continuity_across_branch_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..2_000 {
        let r: f64 = rng.gen_range(1e-2..2.0);
        let xi = r * r / 2.0;
        let eta = (r * r - xi * xi).max(0.0).sqrt();
        let t = rng.gen_range(0.0..10.0);
        let a = multipliers(xi, eta, t).unwrap();
        let b = multipliers(xi + 1e-9, eta, t).unwrap();
        let d = (a.m1 - b.m1).norm().max((a.m2 - b.m2).norm()).max((a.m3 - b.m3).norm());
        assert!(d <= tolerances::BRANCH_CONTINUITY, "jump {d:e} at r = {r}, t = {t}");
    }
}

fn random_state(grid: Grid2D<f64>, seed: u64) -> StateSpectral<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = || {
        let vals: Vec<f64> = (0..grid.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        forward_transform(&PhysicalField::new(grid, vals).unwrap())
    };
    let mut s = StateSpectral::new(field(), field(), field(), field()).unwrap();
    s.project();
    s
}

#[test]
fn semigroup_composition() {
    let grid = Grid2D::square(32, 12.0).unwrap();
    let s = random_state(grid, 3);
    let direct = apply_semigroup(&s, 1.0).unwrap();
    let composed = apply_semigroup(&apply_semigroup(&s, 0.3).unwrap(), 0.7).unwrap();
    assert!(composed.relative_distance(&direct) <= tolerances::SEMIGROUP);
    assert_eq!(apply_semigroup(&s, 0.0).unwrap(), s);
}

#[test]
fn semigroup_preserves_constraints() {
    let grid = Grid2D::square(32, 12.0).unwrap();
    let out = apply_semigroup(&random_state(grid, 4), 2.5).unwrap();
    out.validate().unwrap();
}

#[test]
fn decoupled_mode_is_heat_flow() {
    let grid = Grid2D::square(16, std::f64::consts::TAU).unwrap();
    let u = forward_transform(&PhysicalField::from_fn(grid, |_, y| (2.0 * y).cos()));
    let zero = mhd2d::spectral::SpectralField::zeros(grid);
    let s = StateSpectral::new(u.clone(), zero.clone(), zero.clone(), zero).unwrap();
    let out = apply_semigroup(&s, 0.5).unwrap();
    assert!(out.u.relative_distance(&u.scaled((-2.0f64).exp())) < 1e-14);
    assert_eq!(out.b.max_abs(), 0.0);
}

#[test]
fn semigroup_commutes_with_littlewood_paley() {
    let grid = Grid2D::square(32, 12.0).unwrap();
    let s = random_state(grid, 5);
    for kind in [LpKind::Low(2.0), LpKind::Dyadic(4.0), LpKind::Band(0.5, 3.0), LpKind::tilde_band(1.0)] {
        let mut p = s.clone();
        for f in p.fields_mut() {
            *f = lp_project(f, kind).unwrap();
        }
        let a = apply_semigroup(&p, 0.8).unwrap();
        let b = apply_semigroup(&s, 0.8).unwrap();
        for (x, y) in a.fields().iter().zip(b.fields()) {
            let y = lp_project(y, kind).unwrap();
            let d = x.add_scaled(-1.0, &y).unwrap().max_abs();
            assert!(d <= 1e-12 * y.max_abs().max(1e-300), "{kind:?}");
        }
    }
}

/// The semigroup must solve `u_t = Δu + ∂x b`, `b_t = ∂x u` for the transform in use.
#[test]
fn state_convention_solves_the_linear_system() {
    let grid = Grid2D::square(32, 10.0).unwrap();
    let s = random_state(grid, 6);
    let h = 1e-5;
    let (p, m) = (apply_semigroup(&s, 1.0 + h).unwrap(), apply_semigroup(&s, 1.0 - h).unwrap());
    let c = apply_semigroup(&s, 1.0).unwrap();
    let dt_u = p.u.add_scaled(-1.0, &m.u).unwrap().scaled(0.5 / h);
    let dt_b = p.b.add_scaled(-1.0, &m.b).unwrap().scaled(0.5 / h);
    let rhs_u = apply_symbol(&c.u, symbols::laplacian())
        .unwrap()
        .add_scaled(1.0, &apply_symbol(&c.b, symbols::dx()).unwrap())
        .unwrap();
    let rhs_b = apply_symbol(&c.u, symbols::dx()).unwrap();
    assert!(dt_u.relative_distance(&rhs_u) < 1e-6);
    assert!(dt_b.relative_distance(&rhs_b) < 1e-6);

    // the triple of the written generator is the mirror image in ξ
    let a = state_multipliers(0.7, 0.4, 1.3).unwrap();
    let b = multipliers(-0.7, 0.4, 1.3).unwrap();
    assert_eq!((a.m1, a.m2, a.m3), (b.m1, b.m2, b.m3));
}
