//! Scalar abstraction: the numeric core is generic over `f32` or `f64`.

use std::fmt;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the toolkit's math works over.
pub trait Real: Float + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Real for T where T: Float + FromPrimitive + fmt::Debug + fmt::Display {}

/// Pulls an `f64` constant (tolerance, literal) into the working scalar type.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Widens a scalar for diagnostics; NaN when the conversion is impossible.
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
