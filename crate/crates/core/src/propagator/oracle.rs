//! Reference evaluations of `e^{tA}` that share no code with the multiplier
//! formulas. Double precision only.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Mat2 = [[Complex<f64>; 2]; 2];

const I2: Mat2 = [[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)], [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]];

pub fn generator(xi: f64, eta: f64) -> Mat2 {
    let off = Complex::new(0.0, -xi);
    [[Complex::new(-(xi * xi + eta * eta), 0.0), off], [off, Complex::new(0.0, 0.0)]]
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[Complex::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn add(a: &Mat2, b: &Mat2, s: Complex<f64>) -> Mat2 {
    let mut c = *a;
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] += b[i][j] * s;
        }
    }
    c
}

fn norm1(a: &Mat2) -> f64 {
    (0..2).map(|j| a[0][j].norm() + a[1][j].norm()).fold(0.0, f64::max)
}

pub fn max_entry(a: &Mat2) -> f64 {
    a.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of the generator from its characteristic polynomial.
pub fn eigenvalues_oracle(xi: f64, eta: f64) -> (Complex<f64>, Complex<f64>) {
    let a = generator(xi, eta);
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let root = (tr * tr - det * 4.0).sqrt();
    ((tr + root) / 2.0, (tr - root) / 2.0)
}

/// `e^{tA}` by scaling and squaring around a degree-18 Taylor kernel.
pub fn matrix_exponential_oracle(xi: f64, eta: f64, t: f64) -> Result<Mat2> {
    matrix_exponential_oracle_shifted(xi, eta, t, 0.0)
}

/// `e^{t(A + κI)}`.
pub fn matrix_exponential_oracle_shifted(xi: f64, eta: f64, t: f64, kappa: f64) -> Result<Mat2> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let mut b = add(&generator(xi, eta), &I2, Complex::new(kappa, 0.0));
    for row in b.iter_mut() {
        for c in row.iter_mut() {
            *c *= t;
        }
    }
    let n = norm1(&b);
    let squarings = if n > 0.25 { (n / 0.25).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(squarings);
    for row in b.iter_mut() {
        for c in row.iter_mut() {
            *c *= scale;
        }
    }
    let mut sum = I2;
    let mut term = I2;
    for k in 1..=18 {
        term = mul(&term, &b);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for c in row.iter_mut() {
                *c *= inv;
            }
        }
        sum = add(&sum, &term, Complex::new(1.0, 0.0));
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum);
    }
    Ok(sum)
}

/// `e^{tA}` by classical RK4 on `W' = AW`, `W(0) = I`.
pub fn rk4_oracle(xi: f64, eta: f64, t: f64, steps: usize) -> Mat2 {
    let a = generator(xi, eta);
    let h = t / steps as f64;
    let mut w = I2;
    let hc = |s: f64| Complex::new(s, 0.0);
    for _ in 0..steps {
        let k1 = mul(&a, &w);
        let k2 = mul(&a, &add(&w, &k1, hc(h / 2.0)));
        let k3 = mul(&a, &add(&w, &k2, hc(h / 2.0)));
        let k4 = mul(&a, &add(&w, &k3, hc(h)));
        let mut inc = add(&k1, &k2, hc(2.0));
        inc = add(&inc, &k3, hc(2.0));
        inc = add(&inc, &k4, hc(1.0));
        w = add(&w, &inc, hc(h / 6.0));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_zero_time() {
        assert_eq!(matrix_exponential_oracle(1.3, -0.4, 0.0).unwrap(), I2);
    }

    #[test]
    fn diagonal_when_xi_vanishes() {
        let m = matrix_exponential_oracle(0.0, 1.5, 2.0).unwrap();
        assert!((m[0][0].re - (-4.5f64).exp()).abs() < 1e-15);
        assert!((m[1][1] - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(m[0][1].norm() < 1e-15 && m[1][0].norm() < 1e-15);
    }

    #[test]
    fn taylor_agrees_with_rk4() {
        for (xi, eta, t) in [(0.7, 0.2, 1.5), (1.0, 0.0, 3.0), (0.05, 0.3, 10.0)] {
            let a = matrix_exponential_oracle(xi, eta, t).unwrap();
            let b = rk4_oracle(xi, eta, t, 20_000);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((a[i][j] - b[i][j]).norm() < 1e-9, "{xi} {eta} {t}");
                }
            }
        }
    }
}
