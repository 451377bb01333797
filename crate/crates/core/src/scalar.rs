//! Floating-point scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
///
/// Everything the numeric core needs from the scalar type: IEEE float
/// arithmetic and elementary functions ([`Float`]), the constants π and e
/// ([`FloatConst`]), and conversions from literals and loop indices.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + AddAssign + Display + Debug + Send + Sync + 'static
{
    /// Nearest scalar to an `f64` (used for parsed literals and fixed
    /// constants such as tolerances).
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }

    /// Scalar for a loop index or subdivision count.
    fn from_index(k: u64) -> Self {
        Self::from_u64(k).unwrap_or_else(Self::nan)
    }

    /// Widening (or identity) conversion to `f64` for diagnostics and
    /// display; values outside the `f64` range become infinities.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
