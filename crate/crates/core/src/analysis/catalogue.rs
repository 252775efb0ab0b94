//! The fixed catalogue of norms tracked along trajectories.

use num_complex::Complex;

use super::norms::{fl, fl1_vec, hs, hs_vec, l2, l2_vec, mixed_l1_l2, Inner};
use crate::scalar::Scalar;
use crate::spectral::{apply_symbol, inverse_transform, symbols, SpectralField, StateSpectral};

/// Canonical column names, in report order. `u_vec = (u, v)`, `b_vec = (b, B)`,
/// `D = ∇`, `<D> = ⟨∇⟩`, `HN` is `H^N`, and the last column is the
/// integrand `‖∂x b⃗‖²_{H^{N-1}}` of the space-time part of the energy functional.
pub const CATALOGUE: &[&str] = &[
    "L2(u_vec)",
    "L2(u)",
    "L2(v)",
    "L2(b)",
    "L2(B)",
    "HN(u_vec)",
    "HN(b_vec)",
    "L2(dy u)",
    "H2(dx u_vec)",
    "FL1(u_vec)",
    "FL1(dx u)",
    "H1(dx b)",
    "FL1(|D|^-1 <D> b)",
    "FL1(R1 <D> b)",
    "FL1(B)",
    "L2(dx B)",
    "L2(dx b)",
    "L2(dx u_vec)",
    "L1yL2x(u_vec)",
    "L1xL2y(u_vec)",
    "L1yL2x(b_vec)",
    "L1xL2y(b_vec)",
    "HN-1(dx b_vec)^2",
];

/// Decay exponents `⟨t⟩^e` claimed for catalogue norms.
pub fn theoretical_exponents() -> Vec<(&'static str, f64)> {
    vec![
        ("L2(u_vec)", -0.5),
        ("L2(dy u)", -0.75),
        ("H2(dx u_vec)", -1.0),
        ("FL1(u_vec)", -1.0),
        ("FL1(dx u)", -1.25),
        ("L2(b)", -0.25),
        ("FL1(|D|^-1 <D> b)", -0.5),
        ("L2(B)", -0.5),
        ("H1(dx b)", -0.75),
        ("L2(dx B)", -1.0),
        ("FL1(B)", -1.0),
        ("FL1(R1 <D> b)", -1.0),
        ("L2(dx u_vec)", -1.0),
        ("L2(dx b)", -0.75),
    ]
}

pub fn theoretical_exponent(name: &str) -> Option<f64> {
    theoretical_exponents().into_iter().find(|(n, _)| *n == name).map(|(_, e)| e)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub time: f64,
    /// Aligned with [`CATALOGUE`].
    pub values: Vec<f64>,
}

impl NormReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        CATALOGUE.iter().position(|n| *n == name).map(|i| self.values[i])
    }
}

fn ap<T: Scalar>(f: &SpectralField<T>, s: impl Fn(T, T) -> Complex<T>) -> SpectralField<T> {
    apply_symbol(f, s).expect("catalogue symbols are finite away from the origin")
}

/// Evaluates the whole catalogue at one snapshot with regularity index `n`.
pub fn compute_norms<T: Scalar>(state: &StateSpectral<T>, time: f64, n: u32) -> NormReport {
    let StateSpectral { u, v, b, bb } = state;
    let nn = T::lit(n as f64);
    let one = T::one();
    let dx = symbols::dx::<T>;
    let (dxu, dxv, dxb, dxbb) = (ap(u, dx()), ap(v, dx()), ap(b, dx()), ap(bb, dx()));
    let jb = ap(b, symbols::japanese_pow(one));
    let low_b = ap(&jb, symbols::abs_grad_pow(-one));
    let r1_b = ap(&jb, symbols::riesz(1));
    let (pu, pv, pb, pbb) = (inverse_transform(u), inverse_transform(v), inverse_transform(b), inverse_transform(bb));
    let hn1 = hs_vec(&dxb, &dxbb, nn - one);
    let vals: Vec<T> = vec![
        l2_vec(u, v),
        l2(u),
        l2(v),
        l2(b),
        l2(bb),
        hs_vec(u, v, nn),
        hs_vec(b, bb, nn),
        l2(&ap(u, symbols::dy())),
        hs_vec(&dxu, &dxv, T::lit(2.0)),
        fl1_vec(u, v),
        fl(&dxu, one),
        hs(&dxb, one),
        fl(&low_b, one),
        fl(&r1_b, one),
        fl(bb, one),
        l2(&dxbb),
        l2(&dxb),
        l2_vec(&dxu, &dxv),
        mixed_l1_l2(&[&pu, &pv], Inner::X),
        mixed_l1_l2(&[&pu, &pv], Inner::Y),
        mixed_l1_l2(&[&pb, &pbb], Inner::X),
        mixed_l1_l2(&[&pb, &pbb], Inner::Y),
        hn1 * hn1,
    ];
    debug_assert_eq!(vals.len(), CATALOGUE.len());
    NormReport { time, values: vals.into_iter().map(|v| v.to_f64_lossy()).collect() }
}
