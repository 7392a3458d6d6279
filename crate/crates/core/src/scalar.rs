//! Scalar abstractions.
//!
//! [`Real`] covers the floating point types used by the analytic evaluators
//! (f32 and f64). [`Coefficient`] is the ring in which Dirichlet coefficients
//! live: exact integers, big integers, rationals, reals or complex numbers.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Floating point scalar for analytic evaluation.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion used for constants.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("representable constant")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Coefficient ring for Dirichlet series.
///
/// Integer implementations report overflow through the checked operations;
/// floating point implementations never fail.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn checked_add_c(&self, other: &Self) -> Option<Self> {
        Some(self.clone() + other.clone())
    }

    fn checked_mul_c(&self, other: &Self) -> Option<Self> {
        Some(self.clone() * other.clone())
    }
}

macro_rules! impl_coefficient_int {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn try_inverse(&self) -> Option<Self> {
                match *self {
                    1 => Some(1),
                    -1 => Some(-1),
                    _ => None,
                }
            }

            fn checked_add_c(&self, other: &Self) -> Option<Self> {
                self.checked_add(*other)
            }

            fn checked_mul_c(&self, other: &Self) -> Option<Self> {
                self.checked_mul(*other)
            }
        }
    )*};
}

impl_coefficient_int!(i64, i128);

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

macro_rules! impl_coefficient_float {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn try_inverse(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }
        }

        impl Coefficient for Complex<$t> {
            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }

            fn try_inverse(&self) -> Option<Self> {
                if self.is_zero() {
                    None
                } else {
                    Some(self.inv())
                }
            }
        }
    )*};
}

impl_coefficient_float!(f32, f64);
