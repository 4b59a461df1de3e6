//! Scalar abstractions shared by the geometry and the formula code.
//!
//! Geometry (composition, cylinders, corner checks, projective maps) only
//! needs an ordered field, so it is written against [`Scalar`] and runs on
//! `f32`, `f64` and exact [`Rational`]s alike. Anything that takes a
//! logarithm is written against [`Real`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Ordered field used by the exact geometry.
pub trait Scalar: Clone + Debug + PartialOrd + Signed + 'static {
    /// Lossy conversion used for reporting and for the float pipelines.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f32 {
    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// floating point: f32 or f64
pub trait Real: Scalar + Float + FloatConst + FromPrimitive {
    /// Convergence tolerance for exponent bisection at this precision.
    fn exponent_tolerance() -> Self {
        let floor = Self::from_f64(1e-13).unwrap();
        let eps = Self::epsilon() * Self::from_f64(8.0).unwrap();
        if eps > floor {
            eps
        } else {
            floor
        }
    }

    fn lit(v: f64) -> Self {
        Self::from_f64(v).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an exact rational into any [`Real`], rounding once.
pub fn rational_to_real<T: Real>(r: &Rational) -> T {
    T::from_f64(r.to_f64().unwrap_or(f64::NAN)).unwrap()
}

/// Builds `num/den` as a reduced rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite `f64` (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
