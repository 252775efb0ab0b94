//! Numerical tolerances used by invariant checks, verification sweeps and tests.
//!
//! All values are sized for `f64`: roundoff (~1e-16) times the number of
//! operations touching a coefficient (grid size, squaring depth, step count).

/// Hermitian symmetry of transformed real fields, relative to the largest coefficient.
pub const HERMITIAN: f64 = 1e-12;
/// inverse(forward(f)) == f, relative to max |f|.
pub const ROUND_TRIP: f64 = 1e-12;
/// Pointwise divergence |ξû + ηv̂| relative to |û| + |v̂|.
pub const INCOMPRESSIBLE: f64 = 1e-10;
/// Parseval identity, relative.
pub const PARSEVAL: f64 = 1e-10;
/// Projector idempotence / self-adjointness.
pub const PROJECTOR: f64 = 1e-12;

/// Eigenvalue trace/determinant identities, relative.
pub const EIGEN_IDENTITY: f64 = 1e-12;
/// Multiplier trace/determinant identities, relative to the size of the terms.
pub const MULTIPLIER_IDENTITY: f64 = 1e-10;
/// Multiplier triple vs. the scaling-and-squaring exponential.
pub const MULTIPLIER_VS_ORACLE: f64 = 1e-9;
/// Jump allowed when straddling the eigenvalue-collision curve by 1e-9.
pub const BRANCH_CONTINUITY: f64 = 1e-7;

/// `|z| < SINHC_SERIES` switches sinh(z)/z and cosh(z) to their Taylor series.
pub const SINHC_SERIES: f64 = 1e-3;
/// Regime tag: |disc| <= DEGENERATE_REL * |ξ⃗|⁴ is reported as degenerate.
pub const DEGENERATE_REL: f64 = 1e-12;

/// Semigroup composition and run-vs-semigroup consistency, relative.
pub const SEMIGROUP: f64 = 1e-9;
/// Algebraic rewrites of the nonlinear terms, absolute on O(1) fields.
pub const FORCING_REWRITE: f64 = 1e-10;

/// Non-regression of the fitted envelope constants, relative.
pub const BOUND_CONSTANT_DRIFT: f64 = 0.01;
