//! Scalar traits the rest of the crate is generic over.
//!
//! [`Field`] covers exact arithmetic as well as floats, so boundary matrices can be
//! built in rationals and compared digit for digit. [`Real`] is the floating point
//! subset used by everything that needs roots, trigonometry or tolerances.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, Signed, ToPrimitive, Zero};

/// Commutative field with an ordering on magnitudes.
pub trait Field: Clone + Debug + Num + Neg<Output = Self> + PartialOrd + FromPrimitive {
    /// Absolute value, used for pivot selection.
    fn magnitude(&self) -> Self;

    /// Relative pivot size below which elimination declares a matrix singular.
    fn pivot_threshold() -> Self;

    /// Build `num / den` exactly when the field allows it.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits") / Self::from_i64(den).expect("integer fits")
    }
}

impl Field for f64 {
    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }

    fn pivot_threshold() -> Self {
        1e-13
    }
}

impl Field for f32 {
    fn magnitude(&self) -> Self {
        f32::abs(*self)
    }

    fn pivot_threshold() -> Self {
        1e-6
    }
}

impl Field for BigRational {
    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }

    fn pivot_threshold() -> Self {
        BigRational::zero()
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Field
    + Float
    + FloatConst
    + ToPrimitive
    + Display
    + Default
    + Send
    + Sync
    + Sum
    + NumAssign
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
