//! The five classical bases and exact conversion to and from power sums.
//!
//! Expansions are computed once per partition and memoized behind a lock;
//! after a table entry is built it is only ever read.
//!
//! * `h_n`, `e_n` come from Newton's identities, `h_τ`, `e_τ` by products.
//! * `m_τ` comes from inverting the integer matrix of monomial counts of
//!   `p_λ`, obtained by assigning the parts of `λ` to variables.
//! * `s_τ` is the Jacobi–Trudi determinant in `h` (or the dual one in `e`
//!   when the partition is taller than wide).
//!
//! Coordinates in a basis are read off with the Hall pairing against the
//! dual basis: `⟨f, h_λ⟩` for `m`, `⟨f, m_λ⟩` for `h`, `⟨f, ω m_λ⟩` for `e`,
//! `⟨f, s_λ⟩` for `s`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::{check_weight, SymSeries};
use crate::error::{Error, Result};
use crate::partition::{enumerate, partitions_of, Partition};
use crate::ring::{AdamsRing, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];

    pub fn letter(self) -> char {
        match self {
            Basis::M => 'm',
            Basis::E => 'e',
            Basis::H => 'h',
            Basis::P => 'p',
            Basis::S => 's',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            other => Err(Error::Eval(format!("unknown basis `{other}` (expected m, e, h, p or s)"))),
        }
    }
}

/// A homogeneous power-sum expansion with rational coefficients.
type Expansion = Arc<SymSeries<Rational>>;

#[derive(Default)]
struct Tables {
    expansions: HashMap<(Basis, Partition), Expansion>,
}

fn tables() -> &'static RwLock<Tables> {
    static TABLES: OnceLock<RwLock<Tables>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(Tables::default()))
}

fn cached(basis: Basis, tau: &Partition) -> Option<Expansion> {
    tables()
        .read()
        .unwrap()
        .expansions
        .get(&(basis, tau.clone()))
        .cloned()
}

fn store(basis: Basis, tau: Partition, value: SymSeries<Rational>) -> Expansion {
    let value = Arc::new(value);
    tables()
        .write()
        .unwrap()
        .expansions
        .entry((basis, tau))
        .or_insert(value)
        .clone()
}

/// Power-sum expansion of the basis element `b_τ`, exact and homogeneous of
/// degree `|τ|` (its own degree bound is `|τ|`).
pub fn expansion(basis: Basis, tau: &Partition) -> Expansion {
    if let Some(e) = cached(basis, tau) {
        return e;
    }
    let n = tau.weight();
    let value = match basis {
        Basis::P => SymSeries::from_power_sums(n, [(tau.clone(), Rational::one())]),
        Basis::H | Basis::E if tau.length() == 1 => newton_row(basis, n),
        Basis::H | Basis::E => product_of_rows(basis, tau),
        Basis::M => {
            build_monomial_degree(n);
            return cached(Basis::M, tau).expect("monomial table populated");
        }
        Basis::S => jacobi_trudi(tau),
    };
    store(basis, tau.clone(), value)
}

/// Newton's identities: `n h_n = Σ p_i h_{n-i}`, `n e_n = Σ (-1)^{i-1} p_i e_{n-i}`.
fn newton_row(basis: Basis, n: usize) -> SymSeries<Rational> {
    let mut rows: Vec<SymSeries<Rational>> = vec![SymSeries::one(n)];
    for k in 1..=n {
        let mut acc = SymSeries::zero(n);
        for i in 1..=k {
            let p_i = SymSeries::from_power_sums(n, [(Partition::row(i), Rational::one())]);
            let mut term = p_i.mul(&rows[k - i]);
            if basis == Basis::E && i % 2 == 0 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        rows.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    rows.pop().unwrap()
}

fn product_of_rows(basis: Basis, tau: &Partition) -> SymSeries<Rational> {
    let n = tau.weight();
    let mut acc = SymSeries::one(n);
    for &part in tau.parts() {
        acc = acc.mul(&expansion(basis, &Partition::row(part)).as_ref().clone().truncate(n));
    }
    acc
}

fn row_or_one(basis: Basis, k: i64, bound: usize) -> SymSeries<Rational> {
    match k {
        k if k < 0 => SymSeries::zero(bound),
        0 => SymSeries::one(bound),
        k => expansion(basis, &Partition::row(k as usize)).truncate(bound),
    }
}

/// `s_λ = det(h_{λ_i - i + j})`, or `det(e_{λ'_i - i + j})` when that matrix is smaller.
fn jacobi_trudi(tau: &Partition) -> SymSeries<Rational> {
    let n = tau.weight();
    let first = tau.parts().first().copied().unwrap_or(0);
    let (basis, shape) = if tau.length() <= first {
        (Basis::H, tau.clone())
    } else {
        (Basis::E, tau.conjugate())
    };
    let k = shape.length();
    let parts = shape.parts();
    let entry = |i: usize, j: usize| -> SymSeries<Rational> {
        row_or_one(basis, parts[i] as i64 - i as i64 + j as i64, n)
    };
    let matrix: Vec<Vec<SymSeries<Rational>>> =
        (0..k).map(|i| (0..k).map(|j| entry(i, j)).collect()).collect();
    determinant(&matrix, n)
}

/// Leibniz expansion; the matrices here are at most a handful of rows.
fn determinant(matrix: &[Vec<SymSeries<Rational>>], bound: usize) -> SymSeries<Rational> {
    fn rec(
        matrix: &[Vec<SymSeries<Rational>>],
        row: usize,
        used: &mut Vec<bool>,
        acc: SymSeries<Rational>,
        sign: bool,
        out: &mut SymSeries<Rational>,
    ) {
        if acc.is_zero() {
            return;
        }
        if row == matrix.len() {
            *out = if sign { out.sub(&acc) } else { out.add(&acc) };
            return;
        }
        let mut inversions_left = 0;
        for col in 0..matrix.len() {
            if used[col] {
                continue;
            }
            // parity of the permutation: count unused columns left of `col`
            let next_sign = sign ^ (inversions_left % 2 == 1);
            inversions_left += 1;
            if matrix[row][col].is_zero() {
                continue;
            }
            used[col] = true;
            rec(matrix, row + 1, used, acc.mul(&matrix[row][col]), next_sign, out);
            used[col] = false;
        }
    }
    let mut out = SymSeries::zero(bound);
    let mut used = vec![false; matrix.len()];
    rec(matrix, 0, &mut used, SymSeries::one(bound), false, &mut out);
    out
}

/// Number of ways to distribute the parts of `lambda` over `mu.length()`
/// labelled variables so that variable `j` receives total exponent `mu_j`:
/// the coefficient of `m_μ` in `p_λ`.
pub(crate) fn power_sum_monomial_count(lambda: &Partition, mu: &Partition) -> u64 {
    fn rec(parts: &[usize], remaining: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
        if parts.is_empty() {
            return remaining.iter().all(|&r| r == 0) as u64;
        }
        let key = (parts.len(), remaining.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for j in 0..remaining.len() {
            if remaining[j] >= parts[0] {
                remaining[j] -= parts[0];
                total += rec(&parts[1..], remaining, memo);
                remaining[j] += parts[0];
            }
        }
        memo.insert(key, total);
        total
    }
    if lambda.weight() != mu.weight() {
        return 0;
    }
    let mut remaining = mu.parts().to_vec();
    rec(lambda.parts(), &mut remaining, &mut HashMap::new())
}

/// Fills the table with `m_μ` for every `μ ⊢ n` by inverting `p = A m`.
fn build_monomial_degree(n: usize) {
    let parts = partitions_of(n);
    let size = parts.len();
    // a[l][m] = coefficient of m_{parts[m]} in p_{parts[l]}
    let a: Vec<Vec<Rational>> = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| Rational::from_integer(power_sum_monomial_count(l, m).into()))
                .collect()
        })
        .collect();
    let inv = invert(a).expect("power-sum to monomial matrix is invertible over Q");
    // m = A^{-1} p: m_{parts[i]} = Σ_l inv[i][l] p_{parts[l]}
    for (i, mu) in parts.iter().enumerate() {
        let series = SymSeries::from_power_sums(
            n,
            (0..size).map(|l| (parts[l].clone(), inv[i][l].clone())),
        );
        store(Basis::M, mu.clone(), series);
    }
}

/// Gauss–Jordan inversion over ℚ.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let t = &factor * &a[col][j];
                    a[r][j] -= t;
                }
                if !inv[col][j].is_zero() {
                    let t = &factor * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// The element of the dual basis paired with `b_τ`.
fn dual_expansion(basis: Basis, tau: &Partition) -> SymSeries<Rational> {
    match basis {
        Basis::M => expansion(Basis::H, tau).as_ref().clone(),
        Basis::H => expansion(Basis::M, tau).as_ref().clone(),
        Basis::E => expansion(Basis::M, tau).omega(),
        Basis::S => expansion(Basis::S, tau).as_ref().clone(),
        Basis::P => {
            let z = Rational::from_integer(tau.z_factor().into());
            SymSeries::from_power_sums(tau.weight(), [(tau.clone(), z.recip())])
        }
    }
}

/// `b_τ` as a series of bound `degree_bound`.
pub fn basis_element<R: AdamsRing>(basis: Basis, tau: &Partition, degree_bound: usize) -> Result<SymSeries<R>> {
    check_weight(tau, degree_bound)?;
    let e = expansion(basis, tau);
    Ok(SymSeries::from_power_sums(
        degree_bound,
        e.terms().map(|(t, c)| (t.clone(), R::from_rational(c))),
    ))
}

/// Exact coordinates of `f` in `basis`, for every partition up to the bound.
pub fn to_basis<R: AdamsRing>(f: &SymSeries<R>, basis: Basis) -> BTreeMap<Partition, R> {
    if basis == Basis::P {
        return f.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
    }
    let Some(top) = f.max_degree() else {
        return BTreeMap::new();
    };
    let mut out = BTreeMap::new();
    for tau in enumerate(top) {
        // only degrees where f has support can contribute
        let d = tau.weight();
        if !f.terms().any(|(t, _)| t.weight() == d) {
            continue;
        }
        let c = f.hall_inner_rational(&dual_expansion(basis, &tau));
        if !c.is_zero() {
            out.insert(tau, c);
        }
    }
    out
}

/// Inverse of [`to_basis`]: `Σ c_τ b_τ`.
pub fn from_basis<R: AdamsRing>(
    basis: Basis,
    coeffs: impl IntoIterator<Item = (Partition, R)>,
    degree_bound: usize,
) -> Result<SymSeries<R>> {
    let mut out = SymSeries::zero(degree_bound);
    for (tau, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        check_weight(&tau, degree_bound)?;
        for (t, q) in expansion(basis, &tau).terms() {
            out.add_term(t.clone(), c.scale(q));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn newton_rows_match_the_z_formula() {
        // h_n = Σ_{λ⊢n} p_λ / z_λ, e_n = Σ ε_λ p_λ / z_λ
        for n in 1..=8 {
            let h = expansion(Basis::H, &Partition::row(n));
            let e = expansion(Basis::E, &Partition::row(n));
            for lambda in partitions_of(n) {
                let z = Rational::from_integer(lambda.z_factor().into()).recip();
                assert_eq!(h.coeff(&lambda), z, "h_{n} at {lambda}");
                let sign = if (n - lambda.length()) % 2 == 0 { z.clone() } else { -z };
                assert_eq!(e.coeff(&lambda), sign, "e_{n} at {lambda}");
            }
        }
    }

    #[test]
    fn h2_in_power_sums() {
        let h2 = expansion(Basis::H, &p(&[2]));
        assert_eq!(h2.coeff(&p(&[1, 1])), rational(1, 2));
        assert_eq!(h2.coeff(&p(&[2])), rational(1, 2));
    }

    #[test]
    fn monomial_counts() {
        // p_1^2 = m_2 + 2 m_11
        assert_eq!(power_sum_monomial_count(&p(&[1, 1]), &p(&[2])), 1);
        assert_eq!(power_sum_monomial_count(&p(&[1, 1]), &p(&[1, 1])), 2);
        assert_eq!(power_sum_monomial_count(&p(&[2]), &p(&[1, 1])), 0);
        assert_eq!(power_sum_monomial_count(&p(&[2, 1]), &p(&[2, 1])), 1);
    }

    #[test]
    fn small_schur_functions() {
        // s_[1,1] = e_2, s_[2] = h_2
        assert_eq!(*expansion(Basis::S, &p(&[1, 1])), *expansion(Basis::E, &p(&[2])));
        assert_eq!(*expansion(Basis::S, &p(&[2])), *expansion(Basis::H, &p(&[2])));
        // s_[2,1] = h_2 h_1 - h_3
        let lhs = expansion(Basis::S, &p(&[2, 1]));
        let rhs = expansion(Basis::H, &p(&[2, 1])).sub(&expansion(Basis::H, &p(&[3])));
        assert_eq!(*lhs, rhs);
    }

    #[test]
    fn invert_identity_and_singular() {
        let one = Rational::one();
        let zero = Rational::zero();
        let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(invert(id.clone()).unwrap(), id);
        assert!(invert(vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]]).is_none());
    }
}
