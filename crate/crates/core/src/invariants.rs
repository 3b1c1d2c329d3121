//! Stable dimensions of `O(n)` and `Sp(n)` invariants in `∧^τ V` and
//! `Sym^τ V`, where `V = ℂⁿ` is the standard representation and
//! `∧^τ V = ⊗_i ∧^{τ_i} V`.
//!
//! For `|τ| ≤ n` the dimensions are read off two plethystic exponentials:
//!
//! | group | `∧^τ`                            | `Sym^τ`      |
//! |-------|----------------------------------|--------------|
//! | O(n)  | `(-1)^{|τ|} [m_τ] Exp_σ(e₂)`     | `[m_τ] Exp_σ(h₂)` |
//! | Sp(n) | `(-1)^{|τ|} [m_τ] Exp_σ(h₂)`     | `[m_τ] Exp_σ(e₂)` |
//!
//! Outside that range the coefficients are only congruent to the true
//! dimensions; [`congruence_check`] measures how far the congruence extends
//! using the exact oracles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::{multigraph_count, weyl_ct_sp_kind};
use crate::partition::{enumerate, Partition};
use crate::ring::{AdamsRing, Rational};
use crate::symseries::basis::expansion;
use crate::symseries::{
    basis_element, exp_sigma, filtration_violation, from_basis, Basis, FiltrationKind, SymSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    O,
    Sp,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::O => "O",
            Group::Sp => "Sp",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "o" => Ok(Group::O),
            "sp" => Ok(Group::Sp),
            _ => Err(Error::Eval(format!("unknown group `{s}` (expected O or Sp)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Exterior,
    Symmetric,
}

impl fmt::Display for PowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerKind::Exterior => "exterior",
            PowerKind::Symmetric => "symmetric",
        })
    }
}

impl FromStr for PowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exterior" | "ext" | "wedge" | "e" => Ok(PowerKind::Exterior),
            "symmetric" | "sym" | "h" => Ok(PowerKind::Symmetric),
            _ => Err(Error::Eval(format!("unknown power kind `{s}` (expected ext or sym)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantQuery {
    pub group: Group,
    pub n: usize,
    pub shape: Partition,
    pub kind: PowerKind,
}

impl InvariantQuery {
    pub fn new(group: Group, n: usize, shape: Partition, kind: PowerKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if group == Group::Sp && n % 2 == 1 {
            return Err(Error::OddSymplecticRank(n));
        }
        Ok(InvariantQuery { group, n, shape, kind })
    }

    pub fn is_stable(&self) -> bool {
        self.shape.weight() <= self.n
    }
}

/// Which of `e₂`, `h₂` generates the series for `(group, kind)`.
fn generator(group: Group, kind: PowerKind) -> Basis {
    match (group, kind) {
        (Group::O, PowerKind::Exterior) | (Group::Sp, PowerKind::Symmetric) => Basis::E,
        (Group::Sp, PowerKind::Exterior) | (Group::O, PowerKind::Symmetric) => Basis::H,
    }
}

pub fn generating_series(group: Group, kind: PowerKind, degree_bound: usize) -> SymSeries<Rational> {
    if degree_bound < 2 {
        return SymSeries::one(degree_bound);
    }
    let g = basis_element::<Rational>(generator(group, kind), &Partition::row(2), degree_bound)
        .expect("weight 2 fits the bound");
    exp_sigma(&g).expect("e₂ and h₂ have no constant term")
}

/// `[m_τ] Exp_σ(g₂)` with the exterior sign applied, at any weight.
fn signed_coefficient(group: Group, kind: PowerKind, tau: &Partition) -> Rational {
    let series = generating_series(group, kind, tau.weight());
    let c = series.hall_inner_rational(&expansion(Basis::H, tau));
    if kind == PowerKind::Exterior && tau.weight() % 2 == 1 {
        c.neg_ref()
    } else {
        c
    }
}

fn as_dimension(c: &Rational, q: &InvariantQuery) -> u64 {
    assert!(
        c.is_integer() && *c >= Rational::zero(),
        "series coefficient {c} for {q:?} is not a dimension"
    );
    c.to_integer().try_into().expect("dimension fits in u64")
}

/// The stable invariant dimension. Rejects `|τ| > n`.
pub fn invariant_dim(q: &InvariantQuery) -> Result<u64> {
    if !q.is_stable() {
        return Err(Error::Unstable {
            weight: q.shape.weight(),
            n: q.n,
        });
    }
    let c = signed_coefficient(q.group, q.kind, &q.shape);
    if q.kind == PowerKind::Exterior && q.shape.weight() % 2 == 1 {
        assert!(c.is_zero(), "odd-weight exterior coefficient {c} does not vanish");
    }
    Ok(as_dimension(&c, q))
}

/// The series coefficient whether or not the query is stable. Above the
/// stable range this is not a dimension in general.
pub fn series_coefficient(q: &InvariantQuery) -> Rational {
    signed_coefficient(q.group, q.kind, &q.shape)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub tau: Partition,
    /// `(dim (∧^τ)^{O(n)}, dim (Sym^τ)^{Sp(n)})`
    pub orthogonal_exterior: (u64, u64),
    /// `(dim (∧^τ)^{Sp(n)}, dim (Sym^τ)^{O(n)})`
    pub symplectic_exterior: (u64, u64),
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.orthogonal_exterior.0 == self.orthogonal_exterior.1
            && self.symplectic_exterior.0 == self.symplectic_exterior.1
    }
}

pub fn duality_check(n: usize, tau: &Partition) -> Result<DualityReport> {
    let dim = |group, kind| invariant_dim(&InvariantQuery::new(group, n, tau.clone(), kind)?);
    Ok(DualityReport {
        n,
        tau: tau.clone(),
        orthogonal_exterior: (dim(Group::O, PowerKind::Exterior)?, dim(Group::Sp, PowerKind::Symmetric)?),
        symplectic_exterior: (dim(Group::Sp, PowerKind::Exterior)?, dim(Group::O, PowerKind::Symmetric)?),
    })
}

/// Exact invariant dimension from an oracle independent of the series:
/// torus integration for `Sp(n)` (any weight the oracle supports),
/// multigraph counting for `O(n)` (stable range only).
pub fn oracle_dim(group: Group, n: usize, tau: &Partition, kind: PowerKind) -> Result<u64> {
    match group {
        Group::Sp => Ok(weyl_ct_sp_kind(n, tau, kind)?.try_into().expect("dimensions are nonnegative")),
        Group::O => {
            if tau.weight() > n {
                return Err(Error::Unstable {
                    weight: tau.weight(),
                    n,
                });
            }
            Ok(multigraph_count(tau, kind == PowerKind::Symmetric))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub group: Group,
    pub kind: PowerKind,
    pub n: usize,
    pub filtration: FiltrationKind,
    /// Degree up to which exact dimensions were available.
    pub degree_bound: usize,
    pub holds: bool,
    /// First partition where the (twisted) difference leaves the filtration.
    pub offending: Option<Partition>,
}

/// Degree to which exact dimensions are assembled: two past the stable range
/// for `Sp(n)`, where torus integration is exact at every weight, and the
/// stable range itself for `O(n)`.
pub fn congruence_degree(group: Group, n: usize) -> usize {
    match group {
        Group::Sp => (n + 2).min(crate::oracles::MAX_WEYL_WEIGHT),
        Group::O => n,
    }
}

/// `T = Σ_τ c_τ m_τ` with `c_τ = (-1)^{|τ|} dim (∧^τ)^G` or `dim (Sym^τ)^G`
/// from the oracles, for `|τ| ≤ degree_bound`.
pub fn oracle_series(group: Group, kind: PowerKind, n: usize, degree_bound: usize) -> Result<SymSeries<Rational>> {
    let coeffs = enumerate(degree_bound)
        .map(|tau| {
            let d = Rational::from_i64(oracle_dim(group, n, &tau, kind)? as i64);
            let c = if kind == PowerKind::Exterior && tau.weight() % 2 == 1 { -d } else { d };
            Ok((tau, c))
        })
        .collect::<Result<Vec<_>>>()?;
    from_basis(Basis::M, coeffs, degree_bound)
}

/// Checks that the oracle series `T` agrees with the generating series `G`
/// modulo the filtration: for the degree filtration `T - G ∈ Fil_deg>n`; for
/// the multiplicity filtrations `ω̃(T - G) ∈ Fil_mult>n` in the exterior
/// case and `T - G ∈ Fil_mult>n` in the symmetric case.
pub fn congruence_check(group: Group, kind: PowerKind, n: usize, filtration: FiltrationKind) -> Result<CongruenceReport> {
    let report = |degree_bound, offending: Option<Partition>| CongruenceReport {
        group,
        kind,
        n,
        filtration,
        degree_bound,
        holds: offending.is_none(),
        offending,
    };
    if n == 0 {
        return Ok(report(0, None));
    }
    if group == Group::Sp && n % 2 == 1 {
        return Err(Error::OddSymplecticRank(n));
    }
    let degree_bound = congruence_degree(group, n);
    let truth = oracle_series(group, kind, n, degree_bound)?;
    let diff = truth.sub(&generating_series(group, kind, degree_bound));
    let twisted = match (filtration, kind) {
        (FiltrationKind::Degree, _) | (_, PowerKind::Symmetric) => diff,
        (_, PowerKind::Exterior) => diff.omega_tilde(),
    };
    let offending = filtration_violation(&twisted, filtration, n).map(|(tau, _)| tau);
    Ok(report(degree_bound, offending))
}

/// `ω̃(E[Exp_σ(V h₁)]) = E[Exp_σ(-V h₁)]` for `Sp(n)` with both sides built
/// from exact torus integrals up to `degree_bound`, with no stability
/// assumption.
pub fn real_group_negation(n: usize, degree_bound: usize) -> Result<bool> {
    let positive = oracle_series(Group::Sp, PowerKind::Symmetric, n, degree_bound)?;
    let negative = oracle_series(Group::Sp, PowerKind::Exterior, n, degree_bound)?;
    Ok(positive.omega_tilde() == negative)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeMoment {
    pub n: usize,
    pub r: u32,
    pub lambda: Rational,
    /// `Σ_j (-1)^j (λj)^r dim (∧^j)^{Sp(n)}`
    pub dimension_sum: Rational,
    /// `Σ_{0 ≤ j ≤ n, j even} (jλ)^r`
    pub closed_form: Rational,
}

impl DerivativeMoment {
    pub fn agree(&self) -> bool {
        self.dimension_sum == self.closed_form
    }
}

/// `∫_{Sp(n)} (d/ds)^r|_{s=0} det(1 - e^{λs} M) dM`, two ways. Expanding
/// `det(1 - tM) = Σ_j (-1)^j e_j(M) t^j` gives the dimension sum.
pub fn char_poly_derivative_moment(n: usize, r: u32, lambda: &Rational) -> Result<DerivativeMoment> {
    InvariantQuery::new(Group::Sp, n, Partition::empty(), PowerKind::Exterior)?;
    let term = |j: usize| AdamsRing::pow(&(lambda * Rational::from_i64(j as i64)), r);
    let mut dimension_sum = Rational::zero();
    let mut closed_form = Rational::zero();
    for j in 0..=n {
        let dim = invariant_dim(&InvariantQuery::new(Group::Sp, n, Partition::row(j), PowerKind::Exterior)?)?;
        let signed = Rational::from_i64(if j % 2 == 0 { dim as i64 } else { -(dim as i64) });
        dimension_sum += signed * term(j);
        if j % 2 == 0 {
            closed_form += term(j);
        }
    }
    Ok(DerivativeMoment {
        n,
        r,
        lambda: lambda.clone(),
        dimension_sum,
        closed_form,
    })
}

/// Machine-readable answer to an invariant query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub group: Group,
    pub n: usize,
    pub tau: Partition,
    pub kind: PowerKind,
    /// The dimension, or for `--unstable` queries the raw series coefficient.
    pub dim: String,
    pub stable: bool,
    pub oracle_checks: serde_json::Map<String, serde_json::Value>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn dim(group: Group, n: usize, tau: &[usize], kind: PowerKind) -> Result<u64> {
        invariant_dim(&InvariantQuery::new(group, n, p(tau), kind)?)
    }

    #[test]
    fn generating_series_examples() {
        let o = generating_series(Group::O, PowerKind::Exterior, 4);
        for tau in enumerate(4) {
            let c = o.hall_inner_rational(&expansion(Basis::H, &tau));
            if tau.weight() % 2 == 1 {
                assert!(c.is_zero(), "{tau}");
            }
        }
        let sp = generating_series(Group::Sp, PowerKind::Exterior, 2);
        assert_eq!(sp.hall_inner_rational(&expansion(Basis::H, &p(&[2]))), rational(1, 1));
        for group in [Group::O, Group::Sp] {
            for kind in [PowerKind::Exterior, PowerKind::Symmetric] {
                assert_eq!(generating_series(group, kind, 0), SymSeries::one(0));
            }
        }
    }

    #[test]
    fn dimension_examples() {
        use PowerKind::*;
        assert_eq!(dim(Group::O, 2, &[1, 1], Exterior).unwrap(), 1);
        assert_eq!(dim(Group::O, 4, &[1, 1, 1, 1], Exterior).unwrap(), 3);
        assert_eq!(dim(Group::O, 2, &[2], Exterior).unwrap(), 0);
        assert_eq!(dim(Group::Sp, 2, &[2], Exterior).unwrap(), 1);
        assert_eq!(dim(Group::O, 5, &[], Symmetric).unwrap(), 1);
    }

    #[test]
    fn rejected_queries() {
        assert_eq!(
            dim(Group::O, 2, &[1, 1, 1], PowerKind::Exterior),
            Err(Error::Unstable { weight: 3, n: 2 })
        );
        let msg = Error::Unstable { weight: 3, n: 2 }.to_string();
        assert!(msg.contains("degree filtration"));
        assert_eq!(dim(Group::Sp, 3, &[1], PowerKind::Exterior), Err(Error::OddSymplecticRank(3)));
        assert_eq!(dim(Group::O, 0, &[], PowerKind::Exterior), Err(Error::ZeroRank));
    }

    #[test]
    fn unstable_coefficient_is_still_available() {
        let q = InvariantQuery::new(Group::Sp, 2, p(&[3, 1]), PowerKind::Exterior).unwrap();
        assert!(!q.is_stable());
        assert_eq!(series_coefficient(&q), rational(1, 1));
        assert_eq!(weyl_ct_sp_kind(2, &p(&[3, 1]), PowerKind::Exterior).unwrap(), 0);
    }

    #[test]
    fn stability_in_the_degree_bound() {
        for tau in enumerate(4) {
            let base = signed_coefficient(Group::O, PowerKind::Exterior, &tau);
            for d in tau.weight()..=7 {
                let series = generating_series(Group::O, PowerKind::Exterior, d);
                let mut c = series.hall_inner_rational(&expansion(Basis::H, &tau));
                if tau.weight() % 2 == 1 {
                    c = -c;
                }
                assert_eq!(c, base);
            }
        }
    }

    #[test]
    fn duality_examples() {
        assert!(duality_check(4, &p(&[1, 1])).unwrap().holds());
        let r = duality_check(4, &p(&[2])).unwrap();
        assert!(r.holds());
        assert_eq!(r.orthogonal_exterior, (0, 0));
        assert_eq!(r.symplectic_exterior, (1, 1));
        assert!(duality_check(2, &p(&[])).unwrap().holds());
    }

    #[test]
    fn congruence_examples() {
        use FiltrationKind::Degree;
        assert!(congruence_check(Group::O, PowerKind::Exterior, 4, Degree).unwrap().holds);
        assert!(congruence_check(Group::Sp, PowerKind::Exterior, 2, Degree).unwrap().holds);
        assert!(congruence_check(Group::O, PowerKind::Exterior, 0, Degree).unwrap().holds);
    }

    #[test]
    fn derivative_moment_examples() {
        let one = rational(1, 1);
        let m = char_poly_derivative_moment(2, 0, &one).unwrap();
        assert!(m.agree());
        assert_eq!(m.closed_form, rational(2, 1));
        let m = char_poly_derivative_moment(2, 2, &one).unwrap();
        assert!(m.agree());
        assert_eq!(m.dimension_sum, rational(4, 1));
        let m = char_poly_derivative_moment(6, 0, &rational(0, 1)).unwrap();
        assert_eq!(m.closed_form, rational(4, 1));
        assert!(char_poly_derivative_moment(3, 1, &one).is_err());
    }
}
