//! Tolerances and iteration caps used across the crate.
//!
//! Quantities in this domain range from slopes of order one to actions of
//! order 10^4, so comparisons are relative where values can be large and
//! absolute near zero. [`rel_close`] encodes that convention.

use crate::scalar::Real;

/// Absolute slack on a lottery's probability sum.
pub const PROBABILITY_SUM: f64 = 1e-9;

/// Default relative tolerance for value comparisons.
pub const DEFAULT_REL: f64 = 1e-9;

/// Tolerance for algebraic identities that hold up to rounding only.
pub const IDENTITY_REL: f64 = 1e-12;

/// Relative first-order-condition residual the maximiser must reach.
pub const FOC_REL: f64 = 1e-8;

/// Absolute bracket width at which bisection stops.
pub const BISECT_WIDTH: f64 = 1e-12;

/// Iteration cap for bisection.
pub const BISECT_MAX_ITER: usize = 200;

/// Offset keeping brackets away from the singular points of the
/// first-order condition (zero and the norm shift).
pub const BRACKET_NUDGE: f64 = 1e-9;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn rel_close<T: Real>(a: T, b: T, tol: T) -> bool {
    let scale = T::one().max(a.abs()).max(b.abs());
    (a - b).abs() <= tol * scale
}

/// `|delta| <= tol * max(1, |scale|)`.
pub fn rel_zero<T: Real>(delta: T, scale: T, tol: T) -> bool {
    delta.abs() <= tol * T::one().max(scale.abs())
}
