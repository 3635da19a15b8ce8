//! Exact scalars: rationals, parities, and rationals carrying a power of the
//! formal symbol `s = √(2π)` produced by Gaussian moment integration.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parity of a homogeneous element of a super vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: usize) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign `(-1)^{|self||other|}` as +1 / -1.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// `(-1)^k` for a non-negative integer exponent.
pub fn sign_pow(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coefficient ring for Grassmann-valued data.
///
/// Implemented by [`Rational`] (plain Grassmann numbers) and by
/// [`crate::polynomial::Polynomial`] (superfunctions).
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn scale(&self, r: &Rational) -> Self;

    /// Multiplicative inverse when `self` is a unit of the ring.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A rational number times `s^k` where `s = √(2π)`.
///
/// Zero is normalized to exponent 0 and adds to anything.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: Rational,
    gauss_exponent: i32,
}

impl Scalar {
    pub fn new(rational: Rational, gauss_exponent: i32) -> Self {
        if rational.is_zero() {
            Scalar::zero()
        } else {
            Scalar {
                rational,
                gauss_exponent,
            }
        }
    }

    pub fn rational(r: Rational) -> Self {
        Scalar::new(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(rat(n))
    }

    pub fn zero() -> Self {
        Scalar {
            rational: Rational::zero(),
            gauss_exponent: 0,
        }
    }

    pub fn one() -> Self {
        Scalar::rational(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.rational
    }

    pub fn gauss_exponent(&self) -> i32 {
        self.gauss_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.gauss_exponent != other.gauss_exponent {
            return Err(Error::GaussExponentMismatch {
                left: self.gauss_exponent,
                right: other.gauss_exponent,
            });
        }
        Ok(Scalar::new(
            &self.rational + &other.rational,
            self.gauss_exponent,
        ))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other.clone())
    }

    pub fn scaled(&self, r: &Rational) -> Scalar {
        Scalar::new(&self.rational * r, self.gauss_exponent)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NonInvertible("zero scalar".into()));
        }
        Ok(Scalar::new(self.rational.recip(), -self.gauss_exponent))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rational, self.gauss_exponent)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.rational * &rhs.rational,
            self.gauss_exponent + rhs.gauss_exponent,
        )
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// `3/2`, `3/2*s^2`, `-s`, with `s = sqrt(2pi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gauss_exponent == 0 || self.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let power = if self.gauss_exponent == 1 {
            "s".to_string()
        } else {
            format!("s^{}", self.gauss_exponent)
        };
        if self.rational.is_one() {
            write!(f, "{power}")
        } else if (-self.rational.clone()).is_one() {
            write!(f, "-{power}")
        } else {
            write!(f, "{}*{power}", format_rational(&self.rational))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_exponent_addition_is_rejected() {
        let a = Scalar::new(rat(1), 1);
        let b = Scalar::new(rat(1), 0);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::GaussExponentMismatch { left: 1, right: 0 })
        );
    }

    #[test]
    fn zero_adds_to_any_exponent() {
        let a = Scalar::new(rat(3), 2);
        assert_eq!(a.checked_add(&Scalar::zero()).unwrap(), a);
        assert_eq!(Scalar::new(rat(0), 5), Scalar::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::new(ratio(3, 2), 0).to_string(), "3/2");
        assert_eq!(Scalar::new(rat(-1), 1).to_string(), "-s");
        assert_eq!(Scalar::new(rat(3), 2).to_string(), "3*s^2");
    }

    #[test]
    fn product_adds_exponents() {
        let p = Scalar::new(rat(2), 1) * Scalar::new(ratio(1, 4), 2);
        assert_eq!(p, Scalar::new(ratio(1, 2), 3));
    }
}
