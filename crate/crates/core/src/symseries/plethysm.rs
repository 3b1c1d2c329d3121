use super::SymSeries;
use crate::error::{Error, Result};
use crate::ring::{AdamsRing, Rational};

/// `p_i ∘ Σ r_τ p_τ = Σ ψ^i(r_τ) p_{iτ}`, truncated to the bound of `f`.
pub fn plethysm_p<R: AdamsRing>(i: usize, f: &SymSeries<R>) -> SymSeries<R> {
    assert!(i >= 1, "plethysm_p needs i >= 1");
    if i == 1 {
        return f.clone();
    }
    let bound = f.degree_bound();
    SymSeries::from_power_sums(
        bound,
        f.terms()
            .filter(|(t, _)| t.weight() * i <= bound)
            .map(|(t, c)| (t.scale(i), c.adams(i))),
    )
}

/// `g ∘ f` for `f` with zero constant term.
///
/// The outer function `g` must have rational coefficients. Because `f` has
/// no constant term, `p_λ ∘ f` starts in degree `|λ|`, so the truncation of
/// `g` is harmless and the result is exact up to `min(D_g, D_f)`.
pub fn plethysm<R: AdamsRing>(g: &SymSeries<Rational>, f: &SymSeries<R>) -> Result<SymSeries<R>> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(Error::DivergentPlethysm(c.to_string()));
    }
    let bound = g.degree_bound().min(f.degree_bound());
    Ok(substitute(g, &f.truncate(bound), bound))
}

/// `g ∘ f` where `g` is taken as an exact polynomial, so `f` may have a
/// constant term. The result carries the bound of `f`.
pub fn plethysm_polynomial<R: AdamsRing>(g: &SymSeries<Rational>, f: &SymSeries<R>) -> SymSeries<R> {
    substitute(g, f, f.degree_bound())
}

fn substitute<R: AdamsRing>(g: &SymSeries<Rational>, f: &SymSeries<R>, bound: usize) -> SymSeries<R> {
    let max_part = g
        .terms()
        .flat_map(|(t, _)| t.parts().first().copied())
        .max()
        .unwrap_or(0);
    let adams: Vec<SymSeries<R>> = (1..=max_part).map(|i| plethysm_p(i, f)).collect();
    let mut out = SymSeries::zero(bound);
    for (lambda, c) in g.terms() {
        let mut term = SymSeries::constant(R::from_rational(c), bound);
        for &part in lambda.parts() {
            term = term.mul(&adams[part - 1]);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    out
}

/// `g ∘ x` for a scalar `x ∈ R`: substitute `p_i ↦ ψ^i(x)`.
pub fn plethysm_on_scalar<R: AdamsRing>(g: &SymSeries<Rational>, x: &R) -> R {
    let max_part = g
        .terms()
        .flat_map(|(t, _)| t.parts().first().copied())
        .max()
        .unwrap_or(0);
    let adams: Vec<R> = (1..=max_part).map(|i| x.adams(i)).collect();
    let mut acc = R::zero();
    for (lambda, c) in g.terms() {
        let mut term = R::from_rational(c);
        for &part in lambda.parts() {
            term = term.mul_ref(&adams[part - 1]);
        }
        acc.add_assign_ref(&term);
    }
    acc
}

/// Ordinary exponential of a series without constant term.
fn exp_series<R: AdamsRing>(l: &SymSeries<R>) -> SymSeries<R> {
    let bound = l.degree_bound();
    let mut out = SymSeries::one(bound);
    let mut term = SymSeries::one(bound);
    for k in 1..=bound {
        term = term.mul(l).scale(&Rational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// Ordinary logarithm of `1 + g`.
fn log_series<R: AdamsRing>(g: &SymSeries<R>) -> SymSeries<R> {
    let bound = g.degree_bound();
    let mut out = SymSeries::zero(bound);
    let mut power = SymSeries::one(bound);
    for k in 1..=bound {
        power = power.mul(g);
        if power.is_zero() {
            break;
        }
        let mut q = Rational::new(1.into(), (k as i64).into());
        if k % 2 == 0 {
            q = -q;
        }
        out = out.add(&power.scale(&q));
    }
    out
}

/// The σ-exponential `Exp_σ(f) = Σ_n h_n ∘ f = exp(Σ_{i≥1} ψ^i(f)/i)` on `Fil¹`.
pub fn exp_sigma<R: AdamsRing>(f: &SymSeries<R>) -> Result<SymSeries<R>> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(Error::NonzeroConstantTerm(c.to_string()));
    }
    let bound = f.degree_bound();
    let mut l = SymSeries::zero(bound);
    for i in 1..=bound {
        let term = plethysm_p(i, f);
        if term.is_zero() {
            continue;
        }
        l = l.add(&term.scale(&Rational::new(1.into(), (i as i64).into())));
    }
    Ok(exp_series(&l))
}

/// The σ-logarithm, inverse to [`exp_sigma`]: `Σ_i μ(i)/i · ψ^i(log f)`.
pub fn log_sigma<R: AdamsRing>(f: &SymSeries<R>) -> Result<SymSeries<R>> {
    let c = f.constant_term();
    if !c.is_one() {
        return Err(Error::ConstantTermNotOne {
            op: "Log_sigma",
            constant: c.to_string(),
        });
    }
    let bound = f.degree_bound();
    let log = log_series(&f.sub(&SymSeries::one(bound)));
    let mu = mobius_table(bound);
    let mut out = SymSeries::zero(bound);
    for (i, &m) in mu.iter().enumerate().skip(1) {
        if m == 0 {
            continue;
        }
        let q = Rational::new(m.into(), (i as i64).into());
        out = out.add(&plethysm_p(i, &log).scale(&q));
    }
    Ok(out)
}

/// Power structure `f^r = Exp_σ(r · Log_σ(f))`.
///
/// For integer `r` this is the ordinary power. For an indeterminate `r`
/// the Adams operations act on it through `Exp_σ`, so `ψ^i(r) = r^i`
/// on the Laurent instance.
///
/// That this agrees with other constructions of a power structure on
/// `1 + Fil¹` is assumed, not checked, beyond integer exponents and the
/// identities in the test suite.
pub fn pow_structure<R: AdamsRing>(f: &SymSeries<R>, r: &R) -> Result<SymSeries<R>> {
    let c = f.constant_term();
    if !c.is_one() {
        return Err(Error::ConstantTermNotOne {
            op: "pow",
            constant: c.to_string(),
        });
    }
    exp_sigma(&log_sigma(f)?.scalar_mul(r))
}

/// Möbius function `μ(0..=n)` by sieve (`μ(0)` is unused and set to 0).
pub fn mobius_table(n: usize) -> Vec<i64> {
    let mut mu = vec![1i64; n + 1];
    if n >= 1 {
        mu[0] = 0;
    } else {
        return vec![0];
    }
    let mut is_composite = vec![false; n + 1];
    for p in 2..=n {
        if is_composite[p] {
            continue;
        }
        for k in (p..=n).step_by(p) {
            if k > p {
                is_composite[k] = true;
            }
            mu[k] = -mu[k];
        }
        let sq = p * p;
        for k in (sq..=n).step_by(sq) {
            mu[k] = 0;
        }
    }
    mu
}

pub fn mobius(n: usize) -> i64 {
    mobius_table(n)[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let expected = [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        assert_eq!(mobius_table(12), expected.to_vec());
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(0), 0);
    }
}
