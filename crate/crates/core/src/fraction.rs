//! Exact reduced fractions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
///
/// Serialized and displayed as `"p/q"` (integers as `"p/1"`), never as a decimal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fraction(Ratio<i64>);

impl Fraction {
    pub const ZERO: Fraction = Fraction(Ratio::new_raw(0, 1));
    pub const ONE: Fraction = Fraction(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Fraction(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Fraction(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Fraction(self.0.abs())
    }

    pub fn ceil(&self) -> i64 {
        *self.0.ceil().numer()
    }

    pub fn floor(&self) -> i64 {
        *self.0.floor().numer()
    }

    /// Residue of `self` modulo the positive rational `modulus`, in `[0, modulus)`.
    pub fn rem_euclid(&self, modulus: Fraction) -> Fraction {
        debug_assert!(modulus > Fraction::ZERO);
        let k = (self.0 / modulus.0).floor();
        Fraction(self.0 - k * modulus.0)
    }

    pub fn recip(&self) -> Self {
        Fraction(self.0.recip())
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Least common multiple of the denominators of `values`.
    pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Fraction>) -> i64 {
        values.into_iter().fold(1i64, |acc, f| acc.lcm(&f.denom()))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("not a fraction: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Fraction::new(n, d)
            }
            None => Ok(Fraction::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction(self.0.$method(rhs.0))
            }
        }
        impl $trait<i64> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: i64) -> Fraction {
                Fraction(self.0.$method(Ratio::from_integer(rhs)))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl std::iter::Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::ZERO, |a, b| a + b)
    }
}

impl PartialEq<i64> for Fraction {
    fn eq(&self, other: &i64) -> bool {
        self.0 == Ratio::from_integer(*other)
    }
}

impl PartialOrd<i64> for Fraction {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&Ratio::from_integer(*other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_displays() {
        let f = Fraction::new(6, -4).unwrap();
        assert_eq!(f.numer(), -3);
        assert_eq!(f.denom(), 2);
        assert_eq!(f.to_string(), "-3/2");
        assert_eq!(Fraction::integer(5).to_string(), "5/1");
    }

    #[test]
    fn parses() {
        assert_eq!(
            "11/3".parse::<Fraction>().unwrap(),
            Fraction::new(11, 3).unwrap()
        );
        assert_eq!("4".parse::<Fraction>().unwrap(), Fraction::integer(4));
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("x".parse::<Fraction>().is_err());
    }

    #[test]
    fn residues() {
        let r = Fraction::new(7, 3).unwrap();
        assert_eq!(
            Fraction::integer(3).rem_euclid(r),
            Fraction::new(2, 3).unwrap()
        );
        assert_eq!(
            Fraction::integer(-1).rem_euclid(r),
            Fraction::new(4, 3).unwrap()
        );
        assert_eq!(Fraction::integer(7).rem_euclid(r), Fraction::ZERO);
    }

    #[test]
    fn ceil_floor() {
        let f = Fraction::new(11, 3).unwrap();
        assert_eq!(f.ceil(), 4);
        assert_eq!(f.floor(), 3);
        assert_eq!(Fraction::integer(4).ceil(), 4);
    }
}
