use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::invariants::PowerKind;
use crate::partition::Partition;

pub const MAX_WEYL_RANK: usize = 5;
pub const MAX_WEYL_WEIGHT: usize = 8;

/// Laurent polynomial in the torus coordinates `x_1, …, x_rank`.
///
/// Every integrand here has integer coefficients; the only division, by the
/// Weyl group order, happens once at the end and is checked to be exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: HashMap<Vec<i32>, i128>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], 1)
    }

    pub fn monomial(exponents: Vec<i32>, coeff: i128) -> Self {
        let rank = exponents.len();
        let mut p = Self::zero(rank);
        p.add_term(exponents, coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &i128)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i32]) -> i128 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i128 {
        self.coeff(&vec![0; self.rank])
    }

    fn add_term(&mut self, exponents: Vec<i32>, coeff: i128) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let c = o.get().checked_add(coeff).expect("coefficient overflow");
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_within(other, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`.
    fn mul_within(&self, other: &Self, keep: impl Fn(&[i32]) -> bool) -> Self {
        let mut acc: HashMap<Vec<i32>, i128> = HashMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !keep(&e) {
                    continue;
                }
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                let slot = acc.entry(e).or_insert(0);
                *slot = slot.checked_add(c).expect("coefficient overflow");
            }
        }
        acc.retain(|_, c| *c != 0);
        LaurentPoly {
            rank: self.rank,
            terms: acc,
        }
    }

    /// `CT(self · other)` without forming the product.
    pub fn constant_term_of_product(&self, other: &Self) -> i128 {
        let mut neg = vec![0; self.rank];
        let mut total: i128 = 0;
        for (a, &ca) in &self.terms {
            for (slot, x) in neg.iter_mut().zip(a) {
                *slot = -x;
            }
            let cb = other.coeff(&neg);
            total = total
                .checked_add(ca.checked_mul(cb).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
        total
    }

    /// Largest `|exponent|` of each variable.
    fn reach(&self) -> Vec<i32> {
        let mut r = vec![0; self.rank];
        for e in self.terms.keys() {
            for (slot, x) in r.iter_mut().zip(e) {
                *slot = (*slot).max(x.abs());
            }
        }
        r
    }
}

/// `1 - x^e` for a single exponent vector.
fn one_minus(exponents: Vec<i32>) -> LaurentPoly {
    let rank = exponents.len();
    LaurentPoly::one(rank).add(&LaurentPoly::monomial(exponents, -1))
}

fn unit(rank: usize, j: usize, e: i32) -> Vec<i32> {
    let mut v = vec![0; rank];
    v[j] = e;
    v
}

/// The torus density of `Sp(2m)` without the `1/(2^m m!)` normalization.
fn density(m: usize) -> Arc<LaurentPoly> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<LaurentPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(&m) {
        return d.clone();
    }
    let mut d = LaurentPoly::one(m);
    for j in 0..m {
        d = d.mul(&one_minus(unit(m, j, 2)));
        d = d.mul(&one_minus(unit(m, j, -2)));
    }
    for j in 0..m {
        for k in j + 1..m {
            for (sj, sk) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
                let mut e = vec![0; m];
                e[j] = sj;
                e[k] = sk;
                d = d.mul(&one_minus(e));
            }
        }
    }
    let d = Arc::new(d);
    cache.write().unwrap().insert(m, d.clone());
    d
}

/// `e_k` or `h_k` of the alphabet `x_1, x_1⁻¹, …, x_m, x_m⁻¹`.
fn letter_row(m: usize, k: usize, kind: PowerKind) -> LaurentPoly {
    // rows[j] = degree-j part of the generating function over the letters so far
    let mut rows: Vec<LaurentPoly> = (0..=k)
        .map(|j| if j == 0 { LaurentPoly::one(m) } else { LaurentPoly::zero(m) })
        .collect();
    for var in 0..m {
        for sign in [1, -1] {
            let mut next = rows.clone();
            for j in 1..=k {
                let max_power = match kind {
                    PowerKind::Exterior => 1,
                    PowerKind::Symmetric => j,
                };
                for p in 1..=max_power {
                    let shifted = rows[j - p].mul(&LaurentPoly::monomial(unit(m, var, sign * p as i32), 1));
                    next[j] = next[j].add(&shifted);
                }
            }
            rows = next;
        }
    }
    rows.swap_remove(k)
}

/// `dim (∧^τ ℂⁿ)^{Sp(n)}` by constant-term integration over the maximal torus.
pub fn weyl_ct_sp(n: usize, tau: &Partition) -> Result<i64> {
    weyl_ct_sp_kind(n, tau, PowerKind::Exterior)
}

/// `dim (∧^τ ℂⁿ)^{Sp(n)}` or `dim (Sym^τ ℂⁿ)^{Sp(n)}`:
/// `CT[∏_i b_{τ_i}(x^{±1}) · Δ] / (2^m m!)` with `b = e` or `h` and
/// `Δ = ∏_j (1-x_j²)(1-x_j⁻²) ∏_{j<k} (1-x_j x_k)(1-x_j⁻¹x_k⁻¹)(1-x_j x_k⁻¹)(1-x_j⁻¹x_k)`.
pub fn weyl_ct_sp_kind(n: usize, tau: &Partition, kind: PowerKind) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n % 2 == 1 {
        return Err(Error::OddSymplecticRank(n));
    }
    let m = n / 2;
    if m > MAX_WEYL_RANK {
        return Err(Error::OracleLimit(format!(
            "torus integration supports Sp(n) with n <= {}, got {n}",
            2 * MAX_WEYL_RANK
        )));
    }
    if tau.weight() > MAX_WEYL_WEIGHT {
        return Err(Error::OracleLimit(format!(
            "torus integration supports |tau| <= {MAX_WEYL_WEIGHT}, got {}",
            tau.weight()
        )));
    }
    let w = density(m);
    let box_w = w.reach();
    // A monomial of a partial product can still meet the density only if the
    // remaining factors can bring each exponent back into the density's box.
    let mut remaining: i32 = tau.parts().iter().map(|&k| k as i32).sum();
    let mut integrand = LaurentPoly::one(m);
    for &k in tau.parts() {
        remaining -= k as i32;
        let row = letter_row(m, k, kind);
        integrand = integrand.mul_within(&row, |e| {
            e.iter().zip(&box_w).all(|(x, b)| x.abs() <= b + remaining)
        });
    }
    let ct = integrand.constant_term_of_product(&w);
    let order: i128 = (1..=m as i128).product::<i128>() << m;
    assert_eq!(ct % order, 0, "constant term {ct} not divisible by the Weyl group order {order}");
    Ok((ct / order) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn laurent_basics() {
        let x = LaurentPoly::monomial(vec![1, 0], 1);
        let xinv = LaurentPoly::monomial(vec![-1, 0], 1);
        assert_eq!(x.mul(&xinv), LaurentPoly::one(2));
        let f = one_minus(vec![1, 0]).mul(&one_minus(vec![-1, 0]));
        assert_eq!(f.constant_term(), 2);
        assert_eq!(f.len(), 3);
        assert_eq!(f.constant_term_of_product(&LaurentPoly::one(2)), 2);
        assert_eq!(f.add(&f.mul(&LaurentPoly::monomial(vec![0, 0], -1))), LaurentPoly::zero(2));
    }

    #[test]
    fn trivial_character_has_unit_volume() {
        for n in [2, 4, 6] {
            assert_eq!(weyl_ct_sp(n, &Partition::empty()).unwrap(), 1);
        }
    }

    #[test]
    fn rank_one_examples() {
        assert_eq!(weyl_ct_sp(2, &p(&[2])).unwrap(), 1);
        assert_eq!(weyl_ct_sp(2, &p(&[1])).unwrap(), 0);
        assert_eq!(weyl_ct_sp(2, &p(&[1, 1])).unwrap(), 1);
        // ∧^3 of a 2-dimensional space vanishes.
        assert_eq!(weyl_ct_sp(2, &p(&[3, 1])).unwrap(), 0);
        // SU(2): Sym^a ⊗ Sym^b has an invariant iff a = b.
        assert_eq!(weyl_ct_sp_kind(2, &p(&[3, 3]), PowerKind::Symmetric).unwrap(), 1);
        assert_eq!(weyl_ct_sp_kind(2, &p(&[3, 1]), PowerKind::Symmetric).unwrap(), 0);
        assert_eq!(weyl_ct_sp_kind(2, &p(&[1, 1, 1, 1]), PowerKind::Symmetric).unwrap(), 2);
    }

    #[test]
    fn tensor_powers_of_the_standard_representation() {
        // dim (V^{⊗2k})^{Sp(n)} = (2k-1)!! once n >= 2k.
        assert_eq!(weyl_ct_sp(4, &p(&[1, 1, 1, 1])).unwrap(), 3);
        assert_eq!(weyl_ct_sp(6, &p(&[1; 6])).unwrap(), 15);
    }

    #[test]
    fn limits() {
        assert_eq!(weyl_ct_sp(3, &p(&[1])), Err(Error::OddSymplecticRank(3)));
        assert_eq!(weyl_ct_sp(0, &p(&[1])), Err(Error::ZeroRank));
        assert!(matches!(weyl_ct_sp(12, &p(&[1])), Err(Error::OracleLimit(_))));
        assert!(matches!(weyl_ct_sp(2, &p(&[9])), Err(Error::OracleLimit(_))));
    }
}
