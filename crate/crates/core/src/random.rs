//! Seeded random instances: coefficients, series and random variables.
//!
//! Used by `lsym theorem-check` and by the property suites. Everything is
//! driven by an explicit RNG so runs are reproducible from a seed.

use rand::Rng;

use crate::partition::{enumerate, Partition};
use crate::prob::RandomVariable;
use crate::ring::{rational, AdamsRing, Laurent, Monomial, Rational, Var};
use crate::symseries::SymSeries;

pub fn small_rational<G: Rng + ?Sized>(rng: &mut G) -> Rational {
    let num = rng.random_range(-5i64..=5);
    let den = rng.random_range(1i64..=3);
    rational(num, den)
}

/// A Laurent polynomial with 1–3 terms over `vars`, each monomial of total
/// absolute degree at most `max_degree`, small rational coefficients.
pub fn laurent<G: Rng + ?Sized>(rng: &mut G, vars: &[Var], max_degree: u32) -> Laurent {
    let terms = rng.random_range(1..=3);
    let mut acc = Laurent::zero();
    for _ in 0..terms {
        let mut budget = max_degree as i32;
        let mut pairs = Vec::new();
        for &v in vars {
            if budget == 0 {
                break;
            }
            let e = rng.random_range(-budget..=budget);
            budget -= e.abs();
            pairs.push((v, e));
        }
        let mut c = small_rational(rng);
        if c == rational(0, 1) {
            c = rational(1, 1);
        }
        acc.add_assign_ref(&Laurent::term(c, Monomial::from_pairs(pairs)));
    }
    acc
}

/// A Laurent polynomial with nonnegative integer coefficients: a genuine
/// multiset of monomials, the kind of value an eigenvalue multiset takes.
pub fn effective_laurent<G: Rng + ?Sized>(rng: &mut G, vars: &[Var], max_degree: u32) -> Laurent {
    let terms = rng.random_range(1..=3);
    let mut acc = Laurent::zero();
    for _ in 0..terms {
        let mut budget = max_degree as i32;
        let mut pairs = Vec::new();
        for &v in vars {
            let e = rng.random_range(-budget..=budget);
            budget -= e.abs();
            pairs.push((v, e));
        }
        let c = rng.random_range(1i64..=2);
        acc.add_assign_ref(&Laurent::term(rational(c, 1), Monomial::from_pairs(pairs)));
    }
    acc
}

/// A coefficient for a random series; `vars` empty means rational.
pub trait RandomCoefficient: AdamsRing {
    fn random<G: Rng + ?Sized>(rng: &mut G, vars: &[Var]) -> Self;
}

impl RandomCoefficient for Rational {
    fn random<G: Rng + ?Sized>(rng: &mut G, _vars: &[Var]) -> Self {
        small_rational(rng)
    }
}

impl RandomCoefficient for Laurent {
    fn random<G: Rng + ?Sized>(rng: &mut G, vars: &[Var]) -> Self {
        if vars.is_empty() {
            Laurent::constant(small_rational(rng))
        } else {
            laurent(rng, vars, 2)
        }
    }
}

/// A sparse random series of bound `degree_bound`: each partition of weight
/// at least `min_degree` is present with probability `density`.
pub fn series<R: RandomCoefficient, G: Rng + ?Sized>(
    rng: &mut G,
    vars: &[Var],
    degree_bound: usize,
    min_degree: usize,
    density: f64,
) -> SymSeries<R> {
    let mut terms: Vec<(Partition, R)> = Vec::new();
    for t in enumerate(degree_bound).filter(|t| t.weight() >= min_degree) {
        if rng.random_bool(density) {
            terms.push((t, R::random(rng, vars)));
        }
    }
    SymSeries::from_power_sums(degree_bound, terms)
}

/// A random variable with 1–`max_outcomes` outcomes, random rational
/// probabilities summing to 1, and Laurent values over `vars`.
pub fn random_variable<G: Rng + ?Sized>(
    rng: &mut G,
    vars: &[Var],
    max_outcomes: usize,
    max_degree: u32,
) -> RandomVariable<Laurent> {
    let k = rng.random_range(1..=max_outcomes.max(1));
    let weights: Vec<i64> = (0..k).map(|_| rng.random_range(1i64..=4)).collect();
    let total: i64 = weights.iter().sum();
    let outcomes = weights
        .into_iter()
        .map(|w| (rational(w, total), laurent(rng, vars, max_degree)))
        .collect();
    RandomVariable::new(outcomes).expect("weights normalized to 1")
}
