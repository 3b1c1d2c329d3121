//! Degree-truncated symmetric power series `Λ^∧_R`.
//!
//! A [`SymSeries`] stores its coefficients in the power-sum basis `{p_τ}`,
//! where multiplication is index union, the involutions act by signs, the
//! Hall pairing is diagonal and `p_i ∘` is index scaling. Other bases
//! (`m`, `e`, `h`, `s`) are reached through [`basis`].
//!
//! Truncation is eager: every operation drops terms of weight above the
//! degree bound, and binary operations use the smaller of the two bounds.

pub mod basis;
mod expand;
mod filtration;
mod plethysm;
mod render;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{AdamsRing, Rational};

pub use basis::{basis_element, from_basis, to_basis, Basis};
pub use expand::expand_in_variables;
pub use filtration::{filtration_check, filtration_violation, FiltrationKind};
pub use plethysm::{
    exp_sigma, log_sigma, mobius, plethysm, plethysm_on_scalar, plethysm_p, plethysm_polynomial,
    pow_structure,
};
pub use render::{render, series_from_json, series_to_json, SeriesJson, TermJson};
pub(crate) use render::atom as atom_name;

#[derive(Clone, PartialEq)]
pub struct SymSeries<R> {
    degree_bound: usize,
    terms: BTreeMap<Partition, R>,
}

impl<R: AdamsRing> SymSeries<R> {
    pub fn zero(degree_bound: usize) -> Self {
        SymSeries {
            degree_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R, degree_bound: usize) -> Self {
        let mut s = SymSeries::zero(degree_bound);
        s.add_term(Partition::empty(), c);
        s
    }

    pub fn one(degree_bound: usize) -> Self {
        SymSeries::constant(R::one(), degree_bound)
    }

    /// `p_τ`; errors when `|τ|` exceeds the bound.
    pub fn power_sum(tau: &Partition, degree_bound: usize) -> Result<Self> {
        check_weight(tau, degree_bound)?;
        let mut s = SymSeries::zero(degree_bound);
        s.add_term(tau.clone(), R::one());
        Ok(s)
    }

    /// Builds a series from power-sum coefficients, dropping zeros and
    /// anything above the bound.
    pub fn from_power_sums(
        degree_bound: usize,
        terms: impl IntoIterator<Item = (Partition, R)>,
    ) -> Self {
        let mut s = SymSeries::zero(degree_bound);
        for (tau, c) in terms {
            s.add_term(tau, c);
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Nonzero power-sum coefficients in partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, tau: &Partition) -> R {
        self.terms.get(tau).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Partition::empty())
    }

    /// Highest weight carrying a nonzero coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).max()
    }

    pub(crate) fn add_term(&mut self, tau: Partition, c: R) {
        if tau.weight() > self.degree_bound || c.is_zero() {
            return;
        }
        match self.terms.entry(tau) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_ref(&c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn truncate(&self, degree_bound: usize) -> Self {
        SymSeries {
            degree_bound,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.weight() <= degree_bound)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous(&self, d: usize) -> Self {
        SymSeries {
            degree_bound: self.degree_bound,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.weight() == d)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = self.truncate(bound);
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = SymSeries::zero(bound);
        for (ta, ca) in &self.terms {
            let wa = ta.weight();
            if wa > bound {
                continue;
            }
            for (tb, cb) in &other.terms {
                if wa + tb.weight() > bound {
                    continue;
                }
                out.add_term(ta.union(tb), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = SymSeries::one(self.degree_bound);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scalar_mul(&self, c: &R) -> Self {
        SymSeries::from_power_sums(
            self.degree_bound,
            self.terms.iter().map(|(t, v)| (t.clone(), c.mul_ref(v))),
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        SymSeries::from_power_sums(
            self.degree_bound,
            self.terms.iter().map(|(t, v)| (t.clone(), v.scale(q))),
        )
    }

    pub fn map_coeffs<S: AdamsRing>(&self, mut f: impl FnMut(&R) -> S) -> SymSeries<S> {
        SymSeries::from_power_sums(
            self.degree_bound,
            self.terms.iter().map(|(t, c)| (t.clone(), f(c))),
        )
    }

    fn map_signs(&self, sign: impl Fn(&Partition) -> bool) -> Self {
        SymSeries {
            degree_bound: self.degree_bound,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), if sign(t) { c.neg_ref() } else { c.clone() }))
                .collect(),
        }
    }

    /// The standard involution `ω`: `p_i ↦ (-1)^{i-1} p_i`, so `ω(e_i) = h_i`.
    pub fn omega(&self) -> Self {
        self.map_signs(|t| t.omega_sign() < 0)
    }

    /// Multiplies the degree-`d` component by `(-1)^d`.
    pub fn degree_flip(&self) -> Self {
        self.map_signs(|t| t.weight() % 2 == 1)
    }

    /// `ω̃ = ω ∘ degree_flip`, acting on generators as `p_i ↦ -p_i`.
    ///
    /// On `p_τ` this is the sign `(-1)^{ℓ(τ)}`. It sends `h_i` to `(-1)^i e_i`
    /// and `e_i` to `(-1)^i h_i`.
    pub fn omega_tilde(&self) -> Self {
        self.map_signs(|t| t.length() % 2 == 1)
    }

    /// The Hall pairing `Σ_λ f_λ g_λ z_λ` on power-sum coefficients.
    ///
    /// Pairing a truncated series against `g` is meaningful when `g` lives in
    /// degrees at most the bound of `self`; terms of `g` above that bound are
    /// simply not seen.
    pub fn hall_inner(&self, other: &Self) -> R {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = R::zero();
        for (t, a) in &small.terms {
            if let Some(b) = large.terms.get(t) {
                let z = Rational::from_integer(t.z_factor().into());
                acc.add_assign_ref(&a.mul_ref(b).scale(&z));
            }
        }
        acc
    }

    /// Pairing against a rational series; the workhorse of basis extraction.
    pub fn hall_inner_rational(&self, other: &SymSeries<Rational>) -> R {
        let mut acc = R::zero();
        for (t, b) in &other.terms {
            if let Some(a) = self.terms.get(t) {
                let z = Rational::from_integer(t.z_factor().into());
                acc.add_assign_ref(&a.scale(&(b * z)));
            }
        }
        acc
    }

    /// The series with rational coefficients, if every coefficient is rational.
    pub fn to_rational(&self) -> Option<SymSeries<Rational>> {
        let mut out = SymSeries::zero(self.degree_bound);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.as_rational()?);
        }
        Some(out)
    }
}

impl SymSeries<Rational> {
    /// Embeds a rational series into any coefficient ring.
    pub fn lift<R: AdamsRing>(&self) -> SymSeries<R> {
        self.map_coeffs(R::from_rational)
    }
}

pub(crate) fn check_weight(tau: &Partition, bound: usize) -> Result<()> {
    if tau.weight() > bound {
        return Err(Error::WeightExceedsBound {
            partition: tau.clone(),
            weight: tau.weight(),
            bound,
        });
    }
    Ok(())
}

impl<R: AdamsRing> fmt::Debug for SymSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymSeries(D={}; {})", self.degree_bound, render(self, Basis::P))
    }
}

impl<R: AdamsRing> fmt::Display for SymSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Basis::P))
    }
}
