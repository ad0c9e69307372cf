//! Scalar abstraction shared by the geometric and surface-fitting kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the geometry and surface kernels: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Angle normalized into (-pi, pi].
    fn wrap_angle(self) -> Self {
        let tau = Self::TAU();
        let mut a = self % tau;
        if a <= -Self::PI() {
            a = a + tau;
        } else if a > Self::PI() {
            a = a - tau;
        }
        a
    }

    /// Angle normalized into [0, 2pi).
    fn wrap_positive(self) -> Self {
        let tau = Self::TAU();
        let a = self % tau;
        if a < Self::zero() {
            let b = a + tau;
            if b >= tau {
                Self::zero()
            } else {
                b
            }
        } else {
            a
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
