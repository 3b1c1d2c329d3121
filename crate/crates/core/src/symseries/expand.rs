use std::collections::HashMap;

use super::SymSeries;
use crate::ring::{AdamsRing, Laurent, Monomial, Rational, Var};

/// Specializes `f` to the alphabet `t1, …, tk`.
///
/// The result lives in the Laurent ring, with the coefficient ring's own
/// indeterminates (if any) alongside `t1 … tk`. The coefficient of `t^τ`
/// equals the `m_τ`-coefficient of `f` whenever `ℓ(τ) ≤ k`.
pub fn expand_in_variables<R: AdamsRing>(f: &SymSeries<R>, k: usize) -> Laurent {
    assert!(k >= 1, "need at least one variable");
    let vars: Vec<Var> = (1..=k).map(|i| Var::new(&format!("t{i}"))).collect();
    let mut power_sums: HashMap<usize, Laurent> = HashMap::new();
    let mut power_sum = |j: usize| -> Laurent {
        power_sums
            .entry(j)
            .or_insert_with(|| {
                let mut acc = Laurent::zero();
                for &v in &vars {
                    acc.add_assign_ref(&Laurent::term(
                        Rational::from_integer(1.into()),
                        Monomial::from_pairs(vec![(v, j as i32)]),
                    ));
                }
                acc
            })
            .clone()
    };
    let mut out = Laurent::zero();
    for (lambda, c) in f.terms() {
        let mut term = c.to_laurent();
        for &part in lambda.parts() {
            term = term.mul_ref(&power_sum(part));
        }
        out.add_assign_ref(&term);
    }
    out
}
