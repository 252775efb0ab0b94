use mhd2d::analysis::fit::fit_decay_with;
use mhd2d::analysis::fit::{fit_decay, Abscissa};
use mhd2d::regions::{
    classify, envelope, frozen_constant, frozen_constants, heat_region_decay, verify_bounds, verify_bounds_on, Region,
    RegionMask, SweepSpec,
};
use mhd2d::spectral::{forward_transform, Grid2D, PhysicalField};
use mhd2d::Error;

#[test]
fn grid_labels_partition_the_modes() {
    let g = Grid2D::<f64>::square(128, 40.0).unwrap();
    let mask = RegionMask::new(g);
    let total: usize = Region::ALL.iter().map(|&r| mask.count(r)).sum();
    assert_eq!(total, g.len());
    assert!(Region::ALL.iter().all(|&r| mask.count(r) > 0));
}

#[test]
fn regions_are_bounded_where_the_geometry_says() {
    let g = Grid2D::<f64>::square(256, 100.0).unwrap();
    let mask = RegionMask::new(g);
    let eps = 1e-12;
    assert!(mask.max_radius(Region::D1) <= 1.0 + eps);
    assert!(mask.max_radius(Region::D2) <= 2.0 + eps);
    assert!(mask.max_radius(Region::D3) <= 4.0 + eps);
    assert!(mask.max_radius(Region::D42) < 1.0);
    let spec = SweepSpec::standard(3, 2000);
    for (region, xi, eta) in spec.frequencies() {
        let r = xi.hypot(eta);
        let bound = match region {
            Region::D1 => 1.0,
            Region::D2 => 2.0,
            Region::D3 => 4.0,
            Region::D42 => 1.0,
            Region::D41 => f64::INFINITY,
        };
        assert!(r <= bound + eps, "{region} at radius {r}");
        if region == Region::D41 {
            assert!(r >= 1.0);
        }
    }
}

#[test]
fn sweeps_are_reproducible() {
    let a = SweepSpec::standard(11, 500).frequencies();
    assert_eq!(a, SweepSpec::standard(11, 500).frequencies());
    assert_ne!(a, SweepSpec::standard(12, 500).frequencies());
    assert_eq!(a.len(), 5 * 500);
    assert!(a.iter().all(|&(r, x, y)| classify(x, y) == r));
}

#[test]
fn envelope_starts_at_its_constant_term() {
    for (region, xi, eta) in SweepSpec::standard(5, 200).frequencies() {
        for i in 1..=3 {
            let e0 = envelope(i, region, xi, eta, 0.0).unwrap();
            let e1 = envelope(i, region, xi, eta, 1.0).unwrap();
            assert!(e0 > 0.0 && e1 <= e0);
        }
    }
    assert!(matches!(envelope(2, Region::D1, 0.5, 0.0, -1.0), Err(Error::NegativeTime(_))));
}

#[test]
fn bounds_reject_mislabelled_or_empty_sweeps() {
    let times = [0.0, 1.0];
    assert!(matches!(verify_bounds_on(&[(Region::D2, 0.5, 0.0)], &times, 1.0), Err(Error::RegionMismatch { .. })));
    assert!(matches!(verify_bounds_on(&[(Region::D1, 0.5, 0.0)], &times, 1.0), Err(Error::EmptySweep(_))));
}

#[test]
fn standard_sweep_reproduces_frozen_constants() {
    let reports = verify_bounds(&SweepSpec::standard(7, 10_000)).unwrap();
    assert_eq!(reports.len(), 15);
    assert_eq!(frozen_constants().len(), 15);
    for r in &reports {
        let c = frozen_constant(r.region, r.i).unwrap();
        assert!(((r.sup_ratio - c) / c).abs() <= 0.01, "{} i={}: {} vs {}", r.region, r.i, r.sup_ratio, c);
        assert!(r.sup_ratio.is_finite() && r.sup_ratio_short <= r.sup_ratio);
    }
}

#[test]
fn bound_reports_do_not_depend_on_thread_count() {
    let spec = SweepSpec::standard(21, 300);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| verify_bounds(&spec).unwrap());
    let four =
        rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| verify_bounds(&spec).unwrap());
    assert_eq!(one, four);
}

fn gaussian(g: Grid2D<f64>) -> mhd2d::spectral::SpectralField<f64> {
    let (cx, cy) = (g.lx() / 2.0, g.ly() / 2.0);
    forward_transform(&PhysicalField::from_fn(g, |x, y| (-((x - cx).powi(2) + (y - cy).powi(2)) / 2.0).exp()))
}

fn slope(k: u32, r: u8) -> f64 {
    let g = Grid2D::square(256, 100.0).unwrap();
    let times: Vec<f64> = (0..40).map(|j| 5.0 * 10f64.powf(j as f64 / 39.0)).collect();
    let vals = heat_region_decay(&gaussian(g), Region::D1, r, k, 1.0, &times).unwrap();
    let series: Vec<(f64, f64)> = times.into_iter().zip(vals).collect();
    fit_decay(&series, (5.0, 50.0)).unwrap().exponent
}

#[test]
fn heat_decay_on_low_frequencies() {
    assert!((slope(0, 2) + 0.5).abs() <= 0.1);
    assert!((slope(1, 2) + 1.0).abs() <= 0.1);
    assert!((slope(0, 1) + 1.0).abs() <= 0.1);
}

#[test]
fn heat_decay_rejects_middle_regions_and_negative_times() {
    let g = Grid2D::square(16, 10.0).unwrap();
    let f = gaussian(g);
    assert!(matches!(heat_region_decay(&f, Region::D2, 2, 0, 1.0, &[1.0]), Err(Error::BadRegion(_))));
    assert!(matches!(heat_region_decay(&f, Region::D1, 2, 0, 1.0, &[-1.0]), Err(Error::NegativeTime(_))));
    let d4 = heat_region_decay(&f, Region::D41, 2, 0, 1.0, &[0.0, 1.0]).unwrap();
    assert!(d4[1] < d4[0]);
}

#[test]
fn exact_power_law_fits_exactly_in_time() {
    let series: Vec<(f64, f64)> = (1..=40)
        .map(|j| {
            let t = j as f64;
            (t, 3.0 * t.powf(-0.5))
        })
        .collect();
    let fit = fit_decay_with(&series, (1.0, 40.0), Abscissa::Time).unwrap();
    assert!((fit.exponent + 0.5).abs() < 1e-6);
}
