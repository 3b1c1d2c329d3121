//! Exact coefficient rings carrying Adams operations.
//!
//! A torsion-free pre-λ ring is determined by its Adams operations once we
//! tensor with ℚ, so the coefficient abstraction only asks for ring
//! arithmetic plus the family `ψ^i`. Two instances ship with the crate:
//! [`Rational`] (every `ψ^i` is the identity) and [`Laurent`] (multivariate
//! Laurent polynomials over ℚ with `ψ^i(x) = x^i` on every indeterminate).

mod laurent;
mod rational;

use std::fmt;

use crate::error::Result;

pub use laurent::{Laurent, Monomial, Var};
pub use rational::{rational, Rational};

/// A commutative ℚ-algebra with Adams operations that are ring homomorphisms.
///
/// Implementations must satisfy `ψ^1 = id`, `ψ^i ∘ ψ^j = ψ^{ij}` and make each
/// `ψ^i` additive, multiplicative and unital.
pub trait AdamsRing: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn from_rational(q: &Rational) -> Self;

    /// The value as a rational number, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// `ψ^i`, for `i ≥ 1`.
    fn adams(&self, i: usize) -> Self;

    fn scale(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }

    /// Multiplicative inverse, when the element is a unit.
    fn try_inverse(&self) -> Option<Self>;

    /// A named indeterminate, for rings that have them.
    fn indeterminate(name: &str) -> Option<Self>;

    /// Embedding into the Laurent ring, used to realize series in variables.
    fn to_laurent(&self) -> Laurent;

    /// Parses the rendered form produced by `Display`.
    fn parse_scalar(s: &str) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Whether the rendered form needs parentheses when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }

    /// Non-negative integer power.
    fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rational(n, d))
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        let term = (
            arb_rational(),
            prop::collection::vec(-2i32..3, 3),
        );
        prop::collection::vec(term, 0..4).prop_map(|terms| {
            let names = ["x", "y", "z"];
            let mut acc = Laurent::zero();
            for (c, exps) in terms {
                let mono = Monomial::from_pairs(
                    names
                        .iter()
                        .zip(exps)
                        .map(|(n, e)| (Var::new(n), e))
                        .collect(),
                );
                acc = acc.add_ref(&Laurent::term(c, mono));
            }
            acc
        })
    }

    fn homomorphism_laws<R: AdamsRing>(a: &R, b: &R, i: usize) -> Result<(), TestCaseError> {
        prop_assert_eq!(a.mul_ref(b).adams(i), a.adams(i).mul_ref(&b.adams(i)));
        prop_assert_eq!(a.add_ref(b).adams(i), a.adams(i).add_ref(&b.adams(i)));
        prop_assert_eq!(R::one().adams(i), R::one());
        Ok(())
    }

    proptest! {
        #[test]
        fn rational_adams_is_a_homomorphism(a in arb_rational(), b in arb_rational(), i in 1usize..7) {
            homomorphism_laws(&a, &b, i)?;
        }

        #[test]
        fn laurent_adams_is_a_homomorphism(a in arb_laurent(), b in arb_laurent(), i in 1usize..7) {
            homomorphism_laws(&a, &b, i)?;
        }

        #[test]
        fn adams_composition(a in arb_laurent(), i in 1usize..7, j in 1usize..7) {
            prop_assert_eq!(a.adams(j).adams(i), a.adams(i * j));
            prop_assert_eq!(a.adams(1), a.clone());
            let q = rational(3, 4);
            prop_assert_eq!(q.adams(i).adams(j), q.adams(i * j));
        }
    }

    #[test]
    fn adams_examples() {
        assert_eq!(rational(5, 2).adams(3), rational(5, 2));
        let x = Laurent::var("x");
        let y = Laurent::var("y");
        let xy_inv = x.mul_ref(&y.try_inverse().unwrap());
        let expected = x.pow(2).mul_ref(&y.pow(2).try_inverse().unwrap());
        assert_eq!(xy_inv.adams(2), expected);
        assert_eq!(xy_inv.adams(1), xy_inv);
    }
}
