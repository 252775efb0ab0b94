use num_complex::Complex;

use super::fft::Transformer;
use super::field::{forward_transform, PhysicalField, SpectralField};
use super::grid::Grid2D;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Multiplies `f̂(ξ⃗)` by `symbol(ξ⃗)`.
///
/// A non-finite symbol value at `ξ⃗ = 0` annihilates the mean mode. On the
/// self-conjugate Nyquist lines the symbol is replaced by its Hermitian part
/// `(s(ξ⃗) + conj(s(ξ⃗*)))/2`, where `ξ⃗*` is the wavevector of the conjugate
/// index; elsewhere real-preserving symbols are used unchanged.
pub fn apply_symbol<T: Scalar>(f: &SpectralField<T>, symbol: impl Fn(T, T) -> Complex<T>) -> Result<SpectralField<T>> {
    let grid = *f.grid();
    let mut out = f.clone();
    for (k, c) in out.coeffs_mut().iter_mut().enumerate() {
        let (xi, eta) = grid.wavevector(k);
        let mut s = symbol(xi, eta);
        if k == 0 {
            if !finite(s) {
                s = Complex::default();
            }
        } else {
            if !finite(s) {
                return Err(Error::NonFiniteSymbol { xi: xi.to_f64_lossy(), eta: eta.to_f64_lossy() });
            }
            if grid.is_nyquist(k) {
                let (cx, cy) = grid.wavevector(grid.conjugate_index(k));
                let sc = symbol(cx, cy);
                if !finite(sc) {
                    return Err(Error::NonFiniteSymbol { xi: cx.to_f64_lossy(), eta: cy.to_f64_lossy() });
                }
                s = (s + sc.conj()) * T::lit(0.5);
            }
        }
        *c = *c * s;
    }
    Ok(out)
}

#[inline]
fn finite<T: Scalar>(c: Complex<T>) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

/// Leray projection `I - ∇Δ⁻¹div` of the vector field `(u, v)`; mean modes are kept.
///
/// Divergence and gradient are odd symbols, so on Nyquist lines they act
/// through [`Grid2D::odd_wavevector`].
pub fn leray_project<T: Scalar>(
    u: &SpectralField<T>,
    v: &SpectralField<T>,
) -> Result<(SpectralField<T>, SpectralField<T>)> {
    u.same_grid(v)?;
    let (mut pu, mut pv) = (u.clone(), v.clone());
    leray_in_place(pu.coeffs_mut(), pv.coeffs_mut(), u.grid());
    Ok((pu, pv))
}

pub(crate) fn leray_in_place<T: Scalar>(u: &mut [Complex<T>], v: &mut [Complex<T>], grid: &Grid2D<T>) {
    let (xs, es) = grid.odd_axes();
    let nx = grid.nx();
    for (iy, &eta) in es.iter().enumerate() {
        for (ix, &xi) in xs.iter().enumerate() {
            let r2 = xi * xi + eta * eta;
            if r2 == T::zero() {
                continue;
            }
            let k = iy * nx + ix;
            let d = (u[k] * xi + v[k] * eta) / r2;
            u[k] = u[k] - d * xi;
            v[k] = v[k] - d * eta;
        }
    }
}

/// True when flat index `k` survives the 2/3-rule truncation.
#[inline]
pub fn in_band<T: Scalar>(grid: &Grid2D<T>, k: usize) -> bool {
    let (kx_max, ky_max) = grid.dealias_cutoff();
    grid.kx_int(k % grid.nx()).abs() <= kx_max && grid.ky_int(k / grid.nx()).abs() <= ky_max
}

pub(crate) fn truncate_in_place<T: Scalar>(coeffs: &mut [Complex<T>], grid: &Grid2D<T>) {
    let (bx, by) = grid.band_axes();
    for (row, &keep_row) in coeffs.chunks_mut(grid.nx()).zip(&by) {
        for (c, &keep) in row.iter_mut().zip(&bx) {
            if !(keep_row && keep) {
                *c = Complex::default();
            }
        }
    }
}

/// Zeroes every mode outside the 2/3-rule band.
pub fn truncate<T: Scalar>(f: &SpectralField<T>) -> SpectralField<T> {
    let mut out = f.clone();
    truncate_in_place(out.coeffs_mut(), f.grid());
    out
}

/// Spectral coefficients of `f g` with both factors and the product
/// truncated to the 2/3 band. Alias-free for band-limited inputs.
pub fn dealiased_product<T: Scalar>(f: &SpectralField<T>, g: &SpectralField<T>) -> Result<SpectralField<T>> {
    f.same_grid(g)?;
    let mut t = Transformer::new(*f.grid());
    Ok(dealiased_product_with(&mut t, f, g))
}

/// [`dealiased_product`] for fields given by physical samples.
pub fn dealiased_product_physical<T: Scalar>(f: &PhysicalField<T>, g: &PhysicalField<T>) -> Result<SpectralField<T>> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    dealiased_product(&forward_transform(f), &forward_transform(g))
}

pub(crate) fn dealiased_product_with<T: Scalar>(
    t: &mut Transformer<T>,
    f: &SpectralField<T>,
    g: &SpectralField<T>,
) -> SpectralField<T> {
    let grid = *f.grid();
    let (ft, gt) = (truncate(f), truncate(g));
    let (fp, gp) = (t.inverse_real(ft.coeffs()), t.inverse_real(gt.coeffs()));
    let prod: Vec<T> = fp.iter().zip(&gp).map(|(&a, &b)| a * b).collect();
    let mut c = t.forward_real(&prod);
    truncate_in_place(&mut c, &grid);
    SpectralField::new(grid, c).expect("grid sizes agree")
}

/// Littlewood–Paley cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpKind {
    /// `P_{≤N}`: multiplier `ψ(ξ⃗/N)`.
    Low(f64),
    /// `P_{>N}`: multiplier `1 - ψ(ξ⃗/N)`.
    High(f64),
    /// `P_N`: multiplier `ψ(ξ⃗/N) - ψ(2ξ⃗/N)`.
    Dyadic(f64),
    /// `P_{M<·≤N} = P_{≤N} - P_{≤M}`.
    Band(f64, f64),
}

impl LpKind {
    /// The band `P∼` at time `t`: cutoffs `⟨t⟩⁻⁸` and `2⟨t⟩^{-0.05}`.
    pub fn tilde_band(t: f64) -> Self {
        let jt = (1.0 + t * t).sqrt();
        LpKind::Band(jt.powf(-8.0), 2.0 * jt.powf(-0.05))
    }

    /// The band `P≈` at time `t`: the `P∼` cutoffs evaluated at `t/2`.
    pub fn approx_band(t: f64) -> Self {
        Self::tilde_band(t / 2.0)
    }

    /// Multiplier value at wavevector magnitude `r`.
    pub fn multiplier(&self, r: f64) -> f64 {
        match *self {
            LpKind::Low(n) => low(r, n),
            LpKind::High(n) => 1.0 - low(r, n),
            LpKind::Dyadic(n) => low(r, n) - low(2.0 * r, n),
            LpKind::Band(m, n) => low(r, n) - low(r, m),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            LpKind::Low(n) | LpKind::High(n) => n >= 0.0 && n.is_finite(),
            LpKind::Dyadic(n) => n > 0.0 && n.is_finite(),
            LpKind::Band(m, n) => m >= 0.0 && m < n && n.is_finite(),
        };
        let (lo, hi) = match *self {
            LpKind::Band(m, n) => (m, n),
            LpKind::Low(n) | LpKind::High(n) | LpKind::Dyadic(n) => (0.0, n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadCutoffs { lo, hi })
        }
    }
}

/// `P_{≤N}` multiplier at radius `r`. `N = 0` keeps only the origin.
fn low(r: f64, n: f64) -> f64 {
    if n == 0.0 {
        return if r == 0.0 { 1.0 } else { 0.0 };
    }
    bump(r / n)
}

/// Smooth radial bump: 1 on `[0, 1]`, 0 on `[2, ∞)`, C^∞ in between.
pub fn bump(r: f64) -> f64 {
    fn chi(s: f64) -> f64 {
        if s > 0.0 {
            (-1.0 / s).exp()
        } else {
            0.0
        }
    }
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let a = chi(2.0 - r);
        a / (a + chi(r - 1.0))
    }
}

pub fn lp_project<T: Scalar>(f: &SpectralField<T>, kind: LpKind) -> Result<SpectralField<T>> {
    kind.validate()?;
    apply_symbol(f, |xi: T, eta: T| Complex::new(T::lit(kind.multiplier(xi.hypot(eta).to_f64_lossy())), T::zero()))
}

#[cfg(test)]
mod tests {
    use super::super::field::inverse_transform;
    use super::super::symbols;
    use super::*;
    use std::f64::consts::TAU;

    fn grid() -> Grid2D<f64> {
        Grid2D::square(32, TAU).unwrap()
    }

    fn max_diff(a: &PhysicalField<f64>, b: &PhysicalField<f64>) -> f64 {
        a.values().iter().zip(b.values()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn identity_symbol_leaves_field_unchanged() {
        let f = forward_transform(&PhysicalField::from_fn(grid(), |x, y| (x + y).sin() + 0.1));
        assert_eq!(apply_symbol(&f, symbols::identity()).unwrap(), f);
    }

    #[test]
    fn dx_of_cosine_is_minus_sine() {
        let g = grid();
        let f = forward_transform(&PhysicalField::from_fn(g, |x, _| x.cos()));
        let d = inverse_transform(&apply_symbol(&f, symbols::dx()).unwrap());
        assert!(max_diff(&d, &PhysicalField::from_fn(g, |x, _| -x.sin())) < 1e-12);
    }

    #[test]
    fn riesz_squares_sum_to_minus_identity_off_mean() {
        let g = grid();
        let p = PhysicalField::from_fn(g, |x, y| (2.0 * x).sin() * y.cos() + 0.7 + (x - 3.0 * y).cos());
        let f = forward_transform(&p);
        let r11 = apply_symbol(&f, symbols::riesz_pair(1, 1)).unwrap();
        let r22 = apply_symbol(&f, symbols::riesz_pair(2, 2)).unwrap();
        let sum = r11.add_scaled(1.0, &r22).unwrap();
        let mean = f.mean();
        let want = PhysicalField::from_fn(g, |x, y| -((2.0 * x).sin() * y.cos() + 0.7 + (x - 3.0 * y).cos() - mean));
        assert!(max_diff(&inverse_transform(&sum), &want) < 1e-10);
    }

    #[test]
    fn singular_symbols_kill_the_mean_mode() {
        let g = grid();
        let f = forward_transform(&PhysicalField::from_fn(g, |x, _| 2.0 + x.cos()));
        for out in [
            apply_symbol(&f, symbols::inv_laplacian()).unwrap(),
            apply_symbol(&f, symbols::abs_grad_pow(-1.0)).unwrap(),
            apply_symbol(&f, symbols::riesz(1)).unwrap(),
        ] {
            assert_eq!(out.coeffs()[0], Complex::default());
        }
    }

    #[test]
    fn nonfinite_symbol_away_from_origin_is_an_error() {
        let f = SpectralField::<f64>::zeros(grid());
        let err = apply_symbol(&f, |xi: f64, _| Complex::new(1.0 / (xi - 1.0), 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSymbol { .. }));
    }

    #[test]
    fn odd_symbols_keep_real_fields_real() {
        let g = Grid2D::<f64>::square(16, 5.0).unwrap();
        let f = forward_transform(&PhysicalField::from_fn(g, |x, y| ((x * 7.0).sin() + y * y * 0.01).exp()));
        for s in [apply_symbol(&f, symbols::dx()).unwrap(), apply_symbol(&f, symbols::riesz(2)).unwrap()] {
            assert!(s.hermitian_defect() < 1e-13);
        }
    }

    #[test]
    fn leray_fixed_point_and_kernel() {
        let g = grid();
        let u = forward_transform(&PhysicalField::from_fn(g, |_, y| y.sin()));
        let v = forward_transform(&PhysicalField::from_fn(g, |x, _| x.sin()));
        let (pu, pv) = leray_project(&u, &v).unwrap();
        assert!(pu.relative_distance(&u) < 1e-14 && pv.relative_distance(&v) < 1e-14);

        let phi = forward_transform(&PhysicalField::from_fn(g, |x, y| (x + 2.0 * y).cos() + (3.0 * x).sin()));
        let gx = apply_symbol(&phi, symbols::dx()).unwrap();
        let gy = apply_symbol(&phi, symbols::dy()).unwrap();
        let (kx, ky) = leray_project(&gx, &gy).unwrap();
        assert!(kx.max_abs() < 1e-15 && ky.max_abs() < 1e-15);
    }

    #[test]
    fn leray_strips_gradient_noise() {
        let g = grid();
        // (sin y, sin x) + ∇cos 2x = (sin y - 2 sin 2x, sin x)
        let u = forward_transform(&PhysicalField::from_fn(g, |x, y| y.sin() - 2.0 * (2.0 * x).sin()));
        let v = forward_transform(&PhysicalField::from_fn(g, |x, _| x.sin()));
        let (pu, pv) = leray_project(&u, &v).unwrap();
        let (eu, ev) = (PhysicalField::from_fn(g, |_, y| y.sin()), PhysicalField::from_fn(g, |x, _| x.sin()));
        assert!(max_diff(&inverse_transform(&pu), &eu) < 1e-12);
        assert!(max_diff(&inverse_transform(&pv), &ev) < 1e-12);
    }

    #[test]
    fn leray_rejects_mismatched_grids() {
        let a = SpectralField::<f64>::zeros(grid());
        let b = SpectralField::<f64>::zeros(Grid2D::square(16, TAU).unwrap());
        assert!(matches!(leray_project(&a, &b), Err(Error::GridMismatch)));
    }

    #[test]
    fn cosine_squared_is_exact() {
        let g = Grid2D::square(8, TAU).unwrap();
        let f = PhysicalField::from_fn(g, |x, _| x.cos());
        let p = inverse_transform(&dealiased_product_physical(&f, &f).unwrap());
        let want = PhysicalField::from_fn(g, |x, _| 0.5 + 0.5 * (2.0 * x).cos());
        assert!(max_diff(&p, &want) < 1e-15);
    }

    #[test]
    fn product_with_zero_is_zero() {
        let g = grid();
        let f = PhysicalField::from_fn(g, |x, y| (x * y).sin());
        let p = dealiased_product_physical(&f, &PhysicalField::zeros(g)).unwrap();
        assert_eq!(p.max_abs(), 0.0);
    }

    #[test]
    fn bump_support_and_values() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.0), 1.0);
        assert_eq!(bump(2.0), 0.0);
        assert!((bump(1.5) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=100 {
            let v = bump(1.0 + i as f64 / 100.0);
            assert!(v <= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn lp_low_pass_identity_and_support() {
        let g = grid();
        let f = forward_transform(&PhysicalField::from_fn(g, |x, y| (x + y).sin() + (5.0 * x).cos()));
        let rmax = 16.0f64.hypot(16.0);
        assert_eq!(lp_project(&f, LpKind::Low(2.0 * rmax)).unwrap(), f);

        let m = SpectralField::from_fn(g, |xi, eta| {
            Complex::new(if xi.abs() == 4.0 && eta == 0.0 { 0.5 } else { 0.0 }, 0.0)
        });
        assert_eq!(lp_project(&m, LpKind::Low(1.0)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn lp_bad_cutoffs() {
        let f = SpectralField::<f64>::zeros(grid());
        assert!(matches!(lp_project(&f, LpKind::Band(2.0, 2.0)), Err(Error::BadCutoffs { .. })));
        assert!(matches!(lp_project(&f, LpKind::Band(3.0, 1.0)), Err(Error::BadCutoffs { .. })));
        assert!(lp_project(&f, LpKind::Band(0.0, 1.0)).is_ok());
    }

    #[test]
    fn time_dependent_bands() {
        match LpKind::tilde_band(0.0) {
            LpKind::Band(m, n) => assert!((m - 1.0).abs() < 1e-15 && (n - 2.0).abs() < 1e-15),
            _ => unreachable!(),
        }
        let (a, b) = (LpKind::approx_band(10.0), LpKind::tilde_band(5.0));
        assert_eq!(a, b);
    }
}
