//! Exact arbitrary-precision rational arithmetic.
//!
//! Every numeric quantity in the toolkit (job sizes, item sizes, machine
//! speeds, loads, objective values, ratios) is a [`Rat`]. There is no
//! floating-point path anywhere: the adversarial constructions rely on exact
//! tie conditions and epsilon-perturbed sizes that floats would corrupt.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::error::CoreError;

/// An exact fraction, always stored in lowest terms with a positive
/// denominator. Formats as `"p/q"` (the denominator is always written, so
/// the text form round-trips bit-exactly).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Canonical reduced fraction with positive denominator.
    pub fn new(num: i64, den: i64) -> Result<Rat, CoreError> {
        if den == 0 {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Smallest integer ≥ self, as a `Rat`.
    pub fn ceil(&self) -> Rat {
        Rat(self.0.ceil())
    }

    /// Largest integer ≤ self, as a `Rat`.
    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    /// Exact integer value, if the denominator is 1 and it fits in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact division; `other` must be nonzero (internal invariant).
    pub fn checked_div(&self, other: &Rat) -> Result<Rat, CoreError> {
        if other.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Rat(&self.0 / &other.0))
    }
}

/// Spec-named constructor: canonical reduced fraction, error on zero
/// denominator.
pub fn make_rational(num: i64, den: i64) -> Result<Rat, CoreError> {
    Rat::new(num, den)
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Rat, CoreError> {
        let bad = || CoreError::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Shorthand used heavily in tests and constructions.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(make_rational(6, 4).unwrap(), rat(3, 2));
        assert_eq!(make_rational(6, 4).unwrap().to_string(), "3/2");
    }

    #[test]
    fn zero_numerator_normalizes() {
        assert_eq!(make_rational(0, 7).unwrap().to_string(), "0/1");
    }

    #[test]
    fn negative_denominator_moves_sign() {
        assert_eq!(make_rational(2, -3).unwrap().to_string(), "-2/3");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(make_rational(1, 0).is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn parse_format_roundtrip() {
        for s in ["5/12", "-2/3", "0/1", "17/12", "1000000000000/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // integer shorthand accepted on input
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::int(3));
    }

    #[test]
    fn exact_arithmetic() {
        let a = rat(1, 3);
        let b = rat(1, 6);
        assert_eq!(&a + &b, rat(1, 2));
        assert_eq!(&a - &b, rat(1, 6));
        assert_eq!(&a * &b, rat(1, 18));
        assert_eq!(&a / &b, Rat::int(2));
        assert_eq!(rat(7, 3).ceil(), Rat::int(3));
        assert_eq!(rat(7, 3).floor(), Rat::int(2));
    }
}
