//! Scalar abstraction: every computation in this crate is generic over
//! [`Real`], which is satisfied by `f32` and `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("literal must be representable in the scalar type")
    }

    /// Converts a count into the scalar type.
    #[inline]
    fn of_usize(value: usize) -> Self {
        Self::from_usize(value).expect("count must be representable in the scalar type")
    }

    #[inline]
    fn half(self) -> Self {
        self / Self::of(2.0)
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

/// Relative deviation |a - b| / max(|a|, |b|, floor).
pub fn rel_diff<R: Real>(a: R, b: R, floor: R) -> R {
    let scale = a.abs().max(b.abs()).max(floor);
    (a - b).abs() / scale
}
