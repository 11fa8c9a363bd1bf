//! Numeric scalar used for line weights, property values and core numbers.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// Degree-type properties are stored as scalars too, so counts must stay
/// below the type's exact-integer range (2^24 for `f32`).
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Debug + Display + Send + Sync + 'static
{
    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count representable as scalar")
    }

    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).unwrap_or_else(Self::nan)
    }

    /// `Some(k)` when the value is a non-negative whole number.
    fn as_whole(self) -> Option<u64> {
        if self >= Self::zero() && self.fract() == Self::zero() {
            self.to_u64()
        } else {
            None
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
