//! Coefficient fields.
//!
//! Every algorithm in the kernel is written against [`Field`], an exact field
//! built on the `num-traits` arithmetic traits. The singularity-theory layers
//! instantiate it with arbitrary-precision rationals ([`crate::Rational`]);
//! machine-word rationals are available for small, fast computations where
//! overflow is known not to occur.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive};

/// An exact field of characteristic zero.
///
/// Floating-point types deliberately do not implement this trait: rank,
/// radical and colength decisions need exact zero tests.
pub trait Field:
    Num + Clone + Debug + Display + PartialEq + Eq + Hash + Send + Sync + 'static
    + std::ops::Neg<Output = Self>
{
    /// Embeds an exact rational, failing when it is not representable.
    fn from_rational(q: &BigRational) -> Option<Self>;

    /// Converts back to an arbitrary-precision rational.
    fn to_rational(&self) -> BigRational;

    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn is_negative(&self) -> bool;
}

impl Field for BigRational {
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for Ratio<i64> {
    fn from_rational(q: &BigRational) -> Option<Self> {
        let n = q.numer().to_i64()?;
        let d = q.denom().to_i64()?;
        Some(Ratio::new(n, d))
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn is_negative(&self) -> bool {
        *self.numer() < 0
    }
}

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as an exact natural.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rationals_round_trip() {
        let q = rat(-3, 4);
        let small = <Ratio<i64> as Field>::from_rational(&q).unwrap();
        assert_eq!(small, Ratio::new(-3, 4));
        assert_eq!(small.to_rational(), q);
        assert!(Field::is_negative(&small));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(2, 2), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        // alternating-sum identity |sum_{l=d+1}^{s} (-1)^l C(s,l)| = C(s-1,d)
        for s in 1..9i64 {
            for d in 0..s {
                let sum: i64 = (d + 1..=s)
                    .map(|l| (-1i64).pow(l as u32) * binomial(s as u64, l as u64) as i64)
                    .sum();
                assert_eq!(sum.unsigned_abs(), binomial(s as u64 - 1, d as u64));
            }
        }
    }
}
