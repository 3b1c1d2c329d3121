//! Finite pre-λ probability spaces and σ-moment generating functions.
//!
//! A [`RandomVariable`] is a finitely supported family of outcomes with
//! rational probabilities. The function ring carries the pointwise Adams
//! operations, and the expectation is the probability-weighted sum. For a
//! Laurent-valued variable, a value such as `x + y` stands for the
//! multiset `{x, y}`, so plethysm evaluates symmetric functions on it.
//!
//! The σ-moment generating function `E[Exp_σ(X h₁)] = Σ_τ E[h_τ ∘ X] m_τ`
//! encodes all the moments `E[h_τ ∘ X]`. The negation identity
//! `E[Exp_σ(-X h₁)] = ω̃(E[Exp_σ(X h₁)])` is checked two ways:
//! [`theorem_negation_check`] compares against the moments of `-X` computed
//! directly, and [`negation_via_exp`] commutes `ω̃` past `Exp_σ` outcome by
//! outcome.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate, Partition};
use crate::ring::{AdamsRing, Rational};
use crate::symseries::basis::expansion;
use crate::symseries::{
    basis_element, exp_sigma, from_basis, plethysm_on_scalar, to_basis, Basis, SymSeries,
};

#[derive(Clone, Debug, PartialEq)]
pub struct RandomVariable<R> {
    outcomes: Vec<(Rational, R)>,
}

impl<R: AdamsRing> RandomVariable<R> {
    /// Probabilities must be nonnegative and sum to one.
    pub fn new(outcomes: Vec<(Rational, R)>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidRandomVariable("no outcomes".into()));
        }
        let mut total = Rational::zero();
        for (p, _) in &outcomes {
            if *p < Rational::zero() {
                return Err(Error::InvalidRandomVariable(format!("negative probability {p}")));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidRandomVariable(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(RandomVariable { outcomes })
    }

    pub fn deterministic(value: R) -> Self {
        RandomVariable {
            outcomes: vec![(Rational::one(), value)],
        }
    }

    pub fn outcomes(&self) -> &[(Rational, R)] {
        &self.outcomes
    }

    pub fn neg(&self) -> Self {
        RandomVariable {
            outcomes: self
                .outcomes
                .iter()
                .map(|(p, v)| (p.clone(), v.neg_ref()))
                .collect(),
        }
    }

    /// `E[X] = Σ p_k x_k`.
    pub fn expectation(&self) -> R {
        let mut acc = R::zero();
        for (p, v) in &self.outcomes {
            acc.add_assign_ref(&v.scale(p));
        }
        acc
    }

    /// `E[g ∘ X]` for a symmetric function `g` with rational coefficients.
    pub fn expect_plethysm(&self, g: &SymSeries<Rational>) -> R {
        let values: Vec<R> = self
            .outcomes
            .par_iter()
            .map(|(p, v)| plethysm_on_scalar(g, v).scale(p))
            .collect();
        sum(values)
    }
}

fn sum<R: AdamsRing>(values: impl IntoIterator<Item = R>) -> R {
    let mut acc = R::zero();
    for v in values {
        acc.add_assign_ref(&v);
    }
    acc
}

/// Applies the expectation coefficientwise to a series-valued random variable.
pub fn expect_series<R: AdamsRing>(outcomes: &[(Rational, SymSeries<R>)]) -> Result<SymSeries<R>> {
    let bound = outcomes
        .iter()
        .map(|(_, f)| f.degree_bound())
        .min()
        .ok_or_else(|| Error::InvalidRandomVariable("no outcomes".into()))?;
    let mut acc = SymSeries::zero(bound);
    for (p, f) in outcomes {
        acc = acc.add(&f.scale(p));
    }
    Ok(acc)
}

/// A σ-moment generating function, an element of `Λ^∧_C` whose
/// `m_τ`-coefficients are moments.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSeries<R: AdamsRing> {
    series: SymSeries<R>,
}

impl<R: AdamsRing> MomentSeries<R> {
    pub fn series(&self) -> &SymSeries<R> {
        &self.series
    }

    pub fn into_series(self) -> SymSeries<R> {
        self.series
    }

    /// The `m_τ`-coefficient, read through `⟨f, h_τ⟩`.
    pub fn coeff(&self, tau: &Partition) -> R {
        self.series.hall_inner_rational(&expansion(Basis::H, tau))
    }
}

/// `E[Π_i b_{τ_i} ∘ X]` for each `τ` up to the bound, from per-outcome row values.
fn moment_series<R: AdamsRing>(
    outcomes: &[(Rational, R)],
    row: Basis,
    degree_bound: usize,
) -> Result<MomentSeries<R>> {
    let rows: Vec<SymSeries<Rational>> = (1..=degree_bound)
        .map(|k| expansion(row, &Partition::row(k)).as_ref().clone())
        .collect();
    let per_outcome: Vec<Vec<(Partition, R)>> = outcomes
        .par_iter()
        .map(|(p, x)| {
            let values: Vec<R> = rows.iter().map(|g| plethysm_on_scalar(g, x)).collect();
            enumerate(degree_bound)
                .map(|tau| {
                    let mut v = R::from_rational(p);
                    for &part in tau.parts() {
                        v = v.mul_ref(&values[part - 1]);
                    }
                    (tau, v)
                })
                .collect()
        })
        .collect();
    let mut coeffs: Vec<(Partition, R)> = enumerate(degree_bound).map(|t| (t, R::zero())).collect();
    for outcome in per_outcome {
        for (slot, (_, v)) in coeffs.iter_mut().zip(outcome) {
            slot.1.add_assign_ref(&v);
        }
    }
    Ok(MomentSeries {
        series: from_basis(Basis::M, coeffs, degree_bound)?,
    })
}

/// `E[Exp_σ(X h₁)] = Σ_τ E[h_τ ∘ X] m_τ`, truncated to degree `degree_bound`.
pub fn sigma_mgf<R: AdamsRing>(x: &RandomVariable<R>, degree_bound: usize) -> Result<MomentSeries<R>> {
    moment_series(&x.outcomes, Basis::H, degree_bound)
}

/// `E[Exp_σ(-X h₁)] = Σ_τ E[h_τ ∘ (-X)] m_τ`, evaluated by plethysm into the
/// negated outcomes; equivalently `Σ_τ (-1)^{|τ|} E[e_τ ∘ X] m_τ`.
pub fn neg_sigma_mgf_direct<R: AdamsRing>(
    x: &RandomVariable<R>,
    degree_bound: usize,
) -> Result<MomentSeries<R>> {
    moment_series(&x.neg().outcomes, Basis::H, degree_bound)
}

/// `E[b_τ ∘ X]` computed directly and through the Hall pairing
/// `⟨E[Exp_σ(X h₁)], b_τ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMoment<R> {
    pub direct: R,
    pub via_pairing: R,
}

impl<R: AdamsRing> LambdaMoment<R> {
    pub fn agree(&self) -> bool {
        self.direct == self.via_pairing
    }
}

pub fn lambda_moment<R: AdamsRing>(
    x: &RandomVariable<R>,
    tau: &Partition,
    kind: Basis,
) -> Result<LambdaMoment<R>> {
    let d = tau.weight();
    let g = basis_element::<Rational>(kind, tau, d)?;
    let direct = x.expect_plethysm(&g);
    let via_pairing = sigma_mgf(x, d)?.series.hall_inner_rational(&g);
    Ok(LambdaMoment { direct, via_pairing })
}

/// Outcome of comparing two moment series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegationCheck {
    pub holds: bool,
    pub degree_bound: usize,
    /// First partition (in partition order) where the `m`-coefficients differ,
    /// with the two rendered values.
    pub first_difference: Option<Difference>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Difference {
    pub partition: Partition,
    pub lhs: String,
    pub rhs: String,
}

fn compare<R: AdamsRing>(lhs: &SymSeries<R>, rhs: &SymSeries<R>) -> NegationCheck {
    let degree_bound = lhs.degree_bound().min(rhs.degree_bound());
    if lhs.truncate(degree_bound) == rhs.truncate(degree_bound) {
        return NegationCheck {
            holds: true,
            degree_bound,
            first_difference: None,
        };
    }
    let diff = lhs.sub(rhs);
    let first = to_basis(&diff, Basis::M).into_iter().next().map(|(tau, _)| {
        let h = expansion(Basis::H, &tau);
        Difference {
            lhs: lhs.hall_inner_rational(&h).to_string(),
            rhs: rhs.hall_inner_rational(&h).to_string(),
            partition: tau,
        }
    });
    NegationCheck {
        holds: false,
        degree_bound,
        first_difference: first,
    }
}

/// `ω̃(E[Exp_σ(X h₁)])` against the directly computed `E[Exp_σ(-X h₁)]`.
pub fn theorem_negation_check<R: AdamsRing>(x: &RandomVariable<R>, degree_bound: usize) -> Result<NegationCheck> {
    let lhs = sigma_mgf(x, degree_bound)?.series.omega_tilde();
    let rhs = neg_sigma_mgf_direct(x, degree_bound)?.series;
    Ok(compare(&lhs, &rhs))
}

/// The exchange route: `E[Exp_σ(ω̃(X h₁))]` computed outcome by outcome
/// with the series exponential, against `ω̃(E[Exp_σ(X h₁)])`.
pub fn negation_via_exp<R: AdamsRing>(x: &RandomVariable<R>, degree_bound: usize) -> Result<NegationCheck> {
    let h1 = basis_element::<R>(Basis::H, &Partition::row(1), degree_bound)?;
    let positive: Vec<(Rational, SymSeries<R>)> = x
        .outcomes
        .iter()
        .map(|(p, v)| Ok((p.clone(), exp_sigma(&h1.scalar_mul(v))?)))
        .collect::<Result<_>>()?;
    let negative: Vec<(Rational, SymSeries<R>)> = x
        .outcomes
        .iter()
        .map(|(p, v)| Ok((p.clone(), exp_sigma(&h1.scalar_mul(v).omega_tilde())?)))
        .collect::<Result<_>>()?;
    let lhs = expect_series(&positive)?.omega_tilde();
    let rhs = expect_series(&negative)?;
    Ok(compare(&lhs, &rhs))
}

/// Wire form: `{"outcomes": [{"prob": "1/2", "value": "x + y"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomVariableJson {
    pub outcomes: Vec<OutcomeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub prob: String,
    pub value: String,
}

impl<R: AdamsRing> RandomVariable<R> {
    pub fn to_json(&self) -> RandomVariableJson {
        RandomVariableJson {
            outcomes: self
                .outcomes
                .iter()
                .map(|(p, v)| OutcomeJson {
                    prob: p.to_string(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &RandomVariableJson) -> Result<Self> {
        let outcomes = json
            .outcomes
            .iter()
            .map(|o| Ok((Rational::parse_scalar(&o.prob)?, R::parse_scalar(&o.value)?)))
            .collect::<Result<Vec<_>>>()?;
        RandomVariable::new(outcomes)
    }
}
