//! Exact integer scalars.
//!
//! Hot loops run on machine integers with checked arithmetic; on overflow the
//! caller retries the whole computation with [`BigInt`]. Every result is
//! therefore exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// An exact integer ring with fallible operations. `None` signals overflow.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Option<Self>;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// The sign of the value: -1, 0 or 1.
    fn signum(&self) -> i32;
}

macro_rules! machine_scalar {
    ($t:ty, $to:ident) => {
        impl Scalar for $t {
            #[inline]
            fn zero() -> Self {
                0
            }
            #[inline]
            fn from_i64(v: i64) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
            #[inline]
            fn from_big(v: &BigInt) -> Option<Self> {
                v.$to()
            }
            #[inline]
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
            #[inline]
            fn is_zero(&self) -> bool {
                *self == 0
            }
            #[inline]
            fn add(&self, other: &Self) -> Option<Self> {
                self.checked_add(*other)
            }
            #[inline]
            fn sub(&self, other: &Self) -> Option<Self> {
                self.checked_sub(*other)
            }
            #[inline]
            fn mul(&self, other: &Self) -> Option<Self> {
                self.checked_mul(*other)
            }
            #[inline]
            fn signum(&self) -> i32 {
                (*self).signum() as i32
            }
        }
    };
}

machine_scalar!(i64, to_i64);
machine_scalar!(i128, to_i128);

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Option<Self> {
        Some(BigInt::from(v))
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn signum(&self) -> i32 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Marker error for a machine-integer overflow inside a fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Converts an `Option` from a checked operation into a `Result`.
#[inline]
pub fn ck<T>(v: Option<T>) -> Result<T, Overflow> {
    v.ok_or(Overflow)
}
