//! Floating point abstraction shared by every kernel in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Real scalar the solver can run in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + FftNum + Default + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every `Scalar` can represent (or round) any finite `f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Fixed-order pairwise summation. The split points depend only on the slice
/// length, so the result is independent of how the caller scheduled the work
/// that produced the terms.
pub fn pairwise_sum<T: Scalar>(terms: &[T]) -> T {
    const BLOCK: usize = 32;
    if terms.len() <= BLOCK {
        let mut acc = T::zero();
        for &t in terms {
            acc = acc + t;
        }
        return acc;
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

/// Pairwise sum of `f(i)` for `i in 0..n` without materialising a buffer.
pub fn pairwise_sum_by<T: Scalar, F: Fn(usize) -> T>(n: usize, f: &F) -> T {
    fn rec<T: Scalar, F: Fn(usize) -> T>(lo: usize, hi: usize, f: &F) -> T {
        const BLOCK: usize = 32;
        if hi - lo <= BLOCK {
            let mut acc = T::zero();
            for i in lo..hi {
                acc = acc + f(i);
            }
            return acc;
        }
        let mid = lo + (hi - lo) / 2;
        rec(lo, mid, f) + rec(mid, hi, f)
    }
    rec(0, n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        assert_eq!(pairwise_sum_by(1000, &|i| i as f64), 499_500.0);
    }

    #[test]
    fn pairwise_forms_agree_bitwise() {
        let v: Vec<f64> = (0..777).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_eq!(pairwise_sum(&v).to_bits(), pairwise_sum_by(v.len(), &|i| v[i]).to_bits());
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(pairwise_sum::<f32>(&[]), 0.0);
    }
}
