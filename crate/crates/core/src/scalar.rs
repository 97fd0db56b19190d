//! Scalar abstraction: score math works for any float width.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar for scores and metrics: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Sum + Debug + Display {
    /// Conversion from an `f64` constant such as a formula parameter.
    fn constant(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable as scalar")
    }

    /// Lossy conversion from a `usize` count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as scalar")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Sum + Debug + Display {}
