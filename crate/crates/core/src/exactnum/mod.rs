//! Exact scalars: rationals, cyclotomic numbers and roots of unity.

pub mod arith;
mod cyclotomic;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{parse_rational, Cyclotomic};

pub type Rational = num_rational::BigRational;

/// The operations the generic linear algebra needs from a scalar field.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn inverse(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Field for Cyclotomic {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn from_i64(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// ζ_m^k with (m, k) kept in lowest terms, so `order` is the exact order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(m: u64, k: i64) -> Self {
        assert!(m > 0, "root of unity of order zero");
        let k = k.rem_euclid(m as i64) as u64;
        if k == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        let g = arith::gcd(m, k);
        RootOfUnity {
            order: m / g,
            exponent: k / g,
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent of this root relative to ζ_m; `m` must be a multiple of the order.
    pub fn exponent_mod(&self, m: u64) -> Option<u64> {
        (m % self.order == 0).then(|| self.exponent * (m / self.order))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = arith::lcm(self.order, other.order);
        Self::new(
            m,
            (self.exponent * (m / self.order) + other.exponent * (m / other.order)) as i64,
        )
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.order, (self.exponent as i64 * e.rem_euclid(self.order as i64)) % self.order as i64)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.order, self.exponent as i64)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.order, self.exponent).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (m, k) = <(u64, i64)>::deserialize(d)?;
        if m == 0 {
            return Err(serde::de::Error::custom("root of unity of order zero"));
        }
        Ok(RootOfUnity::new(m, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_arithmetic() {
        let a = RootOfUnity::new(4, 1);
        let b = RootOfUnity::new(6, 1);
        let c = a.mul(&b);
        assert_eq!((c.order(), c.exponent()), (12, 5));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(c.to_cyclotomic(), &a.to_cyclotomic() * &b.to_cyclotomic());
        assert_eq!(RootOfUnity::new(8, 4), RootOfUnity::new(2, 1));
    }
}
