use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AdamsRing, Laurent};
use crate::error::{Error, Result};

/// Exact rational numbers in lowest terms with positive denominator.
///
/// Adams operations are the identity: this is the binomial λ-structure of ℤ
/// extended to ℚ.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl AdamsRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn adams(&self, _i: usize) -> Self {
        self.clone()
    }

    fn scale(&self, q: &Rational) -> Self {
        self * q
    }

    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn indeterminate(_name: &str) -> Option<Self> {
        None
    }

    fn to_laurent(&self) -> Laurent {
        Laurent::constant(self.clone())
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        compact
            .parse::<Rational>()
            .ok()
            .filter(|_| !compact.starts_with('+'))
            .ok_or_else(|| Error::MalformedScalar(s.to_string()))
    }
}
