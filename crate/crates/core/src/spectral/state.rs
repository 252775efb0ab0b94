use num_complex::Complex;

use super::field::SpectralField;
use super::grid::Grid2D;
use super::ops::{leray_in_place, truncate_in_place};
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum_by, Scalar};
use crate::tolerances;

/// Spectral state `(û, v̂, b̂, B̂)`: velocity `(u, v)` and magnetic
/// perturbation `(b, B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpectral<T: Scalar> {
    pub u: SpectralField<T>,
    pub v: SpectralField<T>,
    pub b: SpectralField<T>,
    pub bb: SpectralField<T>,
}

impl<T: Scalar> StateSpectral<T> {
    /// Builds a state without checking the constraints; see [`Self::validate`].
    pub fn new(u: SpectralField<T>, v: SpectralField<T>, b: SpectralField<T>, bb: SpectralField<T>) -> Result<Self> {
        u.same_grid(&v)?;
        u.same_grid(&b)?;
        u.same_grid(&bb)?;
        Ok(Self { u, v, b, bb })
    }

    pub fn zeros(grid: Grid2D<T>) -> Self {
        let z = SpectralField::zeros(grid);
        Self { u: z.clone(), v: z.clone(), b: z.clone(), bb: z }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        self.u.grid()
    }

    pub fn fields(&self) -> [&SpectralField<T>; 4] {
        [&self.u, &self.v, &self.b, &self.bb]
    }

    pub fn fields_mut(&mut self) -> [&mut SpectralField<T>; 4] {
        [&mut self.u, &mut self.v, &mut self.b, &mut self.bb]
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.is_finite())
    }

    /// Largest `|ξû + ηv̂| / |ξ⃗|` over both vector pairs, relative to the
    /// largest `|û| + |v̂|` of the same pair.
    pub fn divergence_defect(&self) -> T {
        pair_defect(&self.u, &self.v).max(pair_defect(&self.b, &self.bb))
    }

    pub fn hermitian_defect(&self) -> T {
        self.fields().iter().map(|f| f.hermitian_defect()).fold(T::zero(), T::max)
    }

    /// Checks incompressibility and reality at the library tolerances.
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite("state".into()));
        }
        let div_tol = T::lit(tolerances::INCOMPRESSIBLE);
        for (name, d) in [("(u, v)", pair_defect(&self.u, &self.v)), ("(b, B)", pair_defect(&self.b, &self.bb))] {
            if d > div_tol {
                return Err(Error::NotDivergenceFree { pair: name, defect: d.to_f64_lossy() });
            }
        }
        let herm_tol = T::lit(tolerances::HERMITIAN);
        for (name, f) in ["u", "v", "b", "B"].into_iter().zip(self.fields()) {
            let d = f.hermitian_defect();
            if d > herm_tol {
                return Err(Error::NotReal { field: name, defect: d.to_f64_lossy() });
            }
        }
        Ok(())
    }

    /// Leray-projects both pairs and enforces Hermitian symmetry.
    pub fn project(&mut self) {
        let grid = *self.grid();
        leray_in_place(self.u.coeffs_mut(), self.v.coeffs_mut(), &grid);
        leray_in_place(self.b.coeffs_mut(), self.bb.coeffs_mut(), &grid);
        for f in self.fields_mut() {
            f.enforce_hermitian();
        }
    }

    /// Zeroes modes outside the 2/3 band in all four fields.
    pub fn truncate(&mut self) {
        let grid = *self.grid();
        for f in self.fields_mut() {
            truncate_in_place(f.coeffs_mut(), &grid);
        }
    }

    /// `‖u⃗‖²_{L²} + ‖b⃗‖²_{L²}`
    pub fn energy(&self) -> T {
        self.fields().iter().map(|f| f.l2_norm_sq()).fold(T::zero(), |a, b| a + b)
    }

    /// `‖∇u⃗‖²_{L²}`
    pub fn velocity_enstrophy(&self) -> T {
        let grid = self.grid();
        let (u, v) = (self.u.coeffs(), self.v.coeffs());
        let s = pairwise_sum_by(grid.len(), &|k| {
            let (xi, eta) = grid.wavevector(k);
            (xi * xi + eta * eta) * (u[k].norm_sqr() + v[k].norm_sqr())
        });
        grid.area() * s
    }

    /// Relative distance `max_f ‖f - g‖ / max_f ‖g‖` over the four fields.
    pub fn relative_distance(&self, other: &Self) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for (a, b) in self.fields().iter().zip(other.fields()) {
            num = num.max(a.add_scaled(-T::one(), b).map(|d| d.l2_norm_sq().sqrt()).unwrap_or(T::infinity()));
            den = den.max(b.l2_norm_sq().sqrt());
        }
        if den == T::zero() {
            num
        } else {
            num / den
        }
    }

    pub fn cast<U: Scalar>(&self) -> StateSpectral<U> {
        StateSpectral { u: self.u.cast(), v: self.v.cast(), b: self.b.cast(), bb: self.bb.cast() }
    }
}

fn pair_defect<T: Scalar>(a: &SpectralField<T>, b: &SpectralField<T>) -> T {
    let grid = a.grid();
    let (ca, cb): (&[Complex<T>], &[Complex<T>]) = (a.coeffs(), b.coeffs());
    let mut worst = T::zero();
    let mut scale = T::zero();
    for k in 1..grid.len() {
        let (xi, eta) = grid.odd_wavevector(k);
        let r = xi.hypot(eta);
        if r == T::zero() {
            continue;
        }
        worst = worst.max((ca[k] * xi + cb[k] * eta).norm() / r);
        scale = scale.max(ca[k].norm() + cb[k].norm());
    }
    if scale == T::zero() {
        T::zero()
    } else {
        worst / scale
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{forward_transform, PhysicalField};
    use super::*;
    use std::f64::consts::TAU;

    fn shear(g: Grid2D<f64>) -> StateSpectral<f64> {
        let u = forward_transform(&PhysicalField::from_fn(g, |_, y| y.sin()));
        let v = forward_transform(&PhysicalField::from_fn(g, |x, _| (2.0 * x).cos()));
        StateSpectral::new(u.scaled(0.5), v.scaled(0.5), u, v).unwrap()
    }

    #[test]
    fn divergence_free_state_validates() {
        let s = shear(Grid2D::square(16, TAU).unwrap());
        s.validate().unwrap();
    }

    #[test]
    fn compressible_state_is_rejected_then_fixed_by_projection() {
        let g = Grid2D::square(16, TAU).unwrap();
        let u = forward_transform(&PhysicalField::from_fn(g, |x, y| x.sin() + y.sin()));
        let mut s = StateSpectral::new(u.clone(), SpectralField::zeros(g), u, SpectralField::zeros(g)).unwrap();
        assert!(matches!(s.validate(), Err(Error::NotDivergenceFree { .. })));
        s.project();
        s.validate().unwrap();
        let want = forward_transform(&PhysicalField::from_fn(g, |_, y| y.sin()));
        assert!(s.u.relative_distance(&want) < 1e-15);
    }

    #[test]
    fn energy_of_shear() {
        let s = shear(Grid2D::square(16, TAU).unwrap());
        // each unit-amplitude sinusoid carries L²-norm² = 2π²
        let want = 2.5 * 2.0 * std::f64::consts::PI.powi(2);
        assert!((s.energy() - want).abs() < 1e-12 * want);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = SpectralField::<f64>::zeros(Grid2D::square(16, TAU).unwrap());
        let b = SpectralField::<f64>::zeros(Grid2D::square(8, TAU).unwrap());
        assert!(StateSpectral::new(a.clone(), a.clone(), a, b).is_err());
    }
}
