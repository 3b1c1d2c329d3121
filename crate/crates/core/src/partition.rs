//! Integer partitions: the index set for every basis of the symmetric
//! function ring.
//!
//! A [`Partition`] is stored in canonical form: parts weakly decreasing,
//! no zero parts. The total order on partitions is *graded reverse
//! lexicographic*: first by weight, then within a weight the partition
//! with the larger leading parts comes first. So the partitions of 4 are
//! ordered `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`. Every map keyed by
//! partitions in this crate iterates in this order, which keeps
//! serialized output byte-stable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary parts: sorts descending and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `[n]` (empty when `n == 0`).
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `[1, …, 1]` with `n` ones.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts, `|τ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts counted with multiplicity.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Number of distinct values among the parts.
    pub fn distinct_entries(&self) -> usize {
        let mut count = 0;
        let mut prev = 0;
        for &p in &self.parts {
            if p != prev {
                count += 1;
                prev = p;
            }
        }
        count
    }

    /// Multiplies every part by `i`, so that `p_i ∘ p_τ = p_{iτ}`.
    pub fn scale(&self, i: usize) -> Self {
        assert!(i >= 1, "scale factor must be positive");
        Partition {
            parts: self.parts.iter().map(|&p| p * i).collect(),
        }
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|col| self.parts.iter().take_while(|&&p| p >= col).count())
            .collect();
        Partition { parts }
    }

    /// Pairs `(part, multiplicity)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_τ = ∏ i^{m_i} m_i!`, the squared norm of `p_τ` under the Hall pairing.
    pub fn z_factor(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(part, mult)| {
                let mut acc: u128 = 1;
                for k in 1..=mult as u128 {
                    acc = acc
                        .checked_mul(part as u128 * k)
                        .expect("z factor overflows u128");
                }
                acc
            })
            .product()
    }

    /// Disjoint union of parts, the index of `p_λ · p_μ`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition { parts }
    }

    /// `(-1)^{|τ| - ℓ(τ)}`: the sign of `p_τ` under the standard involution.
    pub fn omega_sign(&self) -> i32 {
        if (self.weight() - self.length()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition of weight at most `bound`, graded then reverse lexicographic.
pub fn enumerate(bound: usize) -> impl Iterator<Item = Partition> {
    (0..=bound).flat_map(partitions_of)
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,2,2,1]`, `[]` and `∅`. Parts may appear in any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Partition::empty());
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedPartition(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn statistics_of_the_running_example() {
        let tau = p(&[5, 2, 2, 2]);
        assert_eq!(tau.weight(), 11);
        assert_eq!(tau.length(), 4);
        assert_eq!(tau.distinct_entries(), 2);
        assert_eq!(tau.scale(2), p(&[10, 4, 4, 4]));
    }

    #[test]
    fn small_statistics() {
        assert_eq!(Partition::empty().weight(), 0);
        assert_eq!(Partition::empty().length(), 0);
        assert_eq!(Partition::empty().distinct_entries(), 0);
        assert_eq!(p(&[3, 1]).weight(), 4);
        assert_eq!(p(&[1, 1, 1]).length(), 3);
        assert_eq!(p(&[4, 3, 3, 1]).distinct_entries(), 3);
        assert_eq!(p(&[3, 1]).scale(1), p(&[3, 1]));
        assert_eq!(Partition::empty().scale(3), Partition::empty());
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 2, 2, 1]).conjugate(), p(&[4, 3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(Partition::row(5).conjugate(), Partition::column(5));
    }

    #[test]
    fn z_factors() {
        assert_eq!(p(&[2]).z_factor(), 2);
        assert_eq!(p(&[1, 1]).z_factor(), 2);
        assert_eq!(Partition::empty().z_factor(), 1);
        // 2^3 3! * 5
        assert_eq!(p(&[5, 2, 2, 2]).z_factor(), 240);
    }

    #[test]
    fn canonical_form_sorts_and_strips_zeros() {
        assert_eq!(p(&[0, 1, 3, 0, 2]), p(&[3, 2, 1]));
        assert_eq!(p(&[0, 0]), Partition::empty());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        assert_eq!(
            enumerate(2).collect::<Vec<_>>(),
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(enumerate(4).count(), 12);
        assert_eq!(
            partitions_of(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    /// Brute force: every weakly decreasing sequence obtained by filtering all
    /// compositions of `n` into at most `n` parts with entries `0..=n`.
    fn brute_force_count(n: usize) -> usize {
        fn rec(remaining: usize, slots: usize, out: &mut std::collections::HashSet<Vec<usize>>, cur: &mut Vec<usize>) {
            if slots == 0 {
                if remaining == 0 {
                    let mut v: Vec<usize> = cur.iter().copied().filter(|&x| x > 0).collect();
                    v.sort_unstable_by(|a, b| b.cmp(a));
                    out.insert(v);
                }
                return;
            }
            for x in 0..=remaining {
                cur.push(x);
                rec(remaining - x, slots - 1, out, cur);
                cur.pop();
            }
        }
        let mut set = std::collections::HashSet::new();
        rec(n, n.max(1), &mut set, &mut Vec::new());
        set.len()
    }

    #[test]
    fn enumeration_matches_brute_force_up_to_twelve() {
        let mut cumulative = 0;
        for d in 0..=12 {
            // composition brute force is too slow past 9; p(10..=12) are tabulated.
            if d <= 9 {
                cumulative += brute_force_count(d);
            } else {
                cumulative += [42, 56, 77][d - 10];
            }
            assert_eq!(enumerate(d).count(), cumulative, "bound {d}");
        }
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let all: Vec<_> = enumerate(10).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("[3,2,2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("∅".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!(p(&[2, 1, 1]).to_string(), "[2,1,1]");
        assert!("[2,x]".parse::<Partition>().is_err());
        assert!("2,1".parse::<Partition>().is_err());
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..8, 0..8).prop_map(Partition::new)
    }

    proptest! {
        #[test]
        fn scaling_preserves_counts(tau in arb_partition(), i in 1usize..6) {
            let scaled = tau.scale(i);
            prop_assert_eq!(scaled.weight(), i * tau.weight());
            prop_assert_eq!(scaled.length(), tau.length());
            prop_assert_eq!(scaled.distinct_entries(), tau.distinct_entries());
        }

        #[test]
        fn conjugation_is_an_involution(tau in arb_partition()) {
            prop_assert_eq!(tau.conjugate().conjugate(), tau.clone());
            prop_assert_eq!(tau.conjugate().weight(), tau.weight());
        }

        #[test]
        fn display_parses_back(tau in arb_partition()) {
            prop_assert_eq!(tau.to_string().parse::<Partition>().unwrap(), tau);
        }
    }
}
