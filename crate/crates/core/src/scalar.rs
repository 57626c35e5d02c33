//! Scalar abstractions for the exact linear algebra.
//!
//! Homology ranks, cycle bases and character traces are computed over any
//! [`Field`]: the default is [`crate::Rational`]; the prime field [`Fp`] is
//! available as a fast modular shadow. Smith normal form runs over any
//! [`EuclideanRing`] with checked arithmetic so a machine-integer attempt
//! can fall back to [`crate::Integer`] on overflow.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer as IntegerOps;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, One, Signed, Zero};

/// An exact field.
pub trait Field: Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;

    /// Integer value if the element is one; traces of integral actions land here.
    fn to_integer(&self) -> Option<BigInt>;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer_part())
    }
}

trait IntegerPart {
    fn to_integer_part(&self) -> BigInt;
}

impl IntegerPart for BigRational {
    fn to_integer_part(&self) -> BigInt {
        self.numer() / self.denom()
    }
}

/// Euclidean ring with overflow detection, used by Smith normal form.
pub trait EuclideanRing:
    Clone
    + Debug
    + PartialEq
    + IntegerOps
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToBigInt
    + Send
    + Sync
{
}

impl EuclideanRing for i64 {}
impl EuclideanRing for i128 {}
impl EuclideanRing for BigInt {}

/// Integers modulo the prime `P` (which must be below 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub type F61 = Fp<MERSENNE_61>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        let r = v.rem_euclid(P as i64);
        Fp(r as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }

    /// Symmetric lift into (-P/2, P/2].
    pub fn lift(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        }
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, _rhs: Self) -> Self {
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(BigInt::from(self.lift()))
    }
}

/// `a * b` with overflow reported instead of wrapped.
pub(crate) fn checked_mul<T: EuclideanRing>(a: &T, b: &T) -> Result<T, crate::error::Overflow> {
    a.checked_mul(b).ok_or(crate::error::Overflow)
}

pub(crate) fn checked_sub<T: EuclideanRing>(a: &T, b: &T) -> Result<T, crate::error::Overflow> {
    a.checked_sub(b).ok_or(crate::error::Overflow)
}

pub(crate) fn checked_add<T: EuclideanRing>(a: &T, b: &T) -> Result<T, crate::error::Overflow> {
    a.checked_add(b).ok_or(crate::error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn small_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b) * b, a);
        assert_eq!((-a).value(), 4);
        assert_eq!(F7::new(-1).lift(), -1);
    }

    #[test]
    fn mersenne_inverse() {
        let x = F61::new(123_456_789);
        assert_eq!(x * x.inverse().unwrap(), F61::one());
    }

    #[test]
    fn rational_integer_detection() {
        let r = BigRational::new(BigInt::from(6), BigInt::from(3));
        assert_eq!(Field::to_integer(&r), Some(BigInt::from(2)));
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(Field::to_integer(&h), None);
    }
}
