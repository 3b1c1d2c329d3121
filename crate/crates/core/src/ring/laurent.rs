use std::collections::BTreeMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::Signed;

use super::{AdamsRing, Rational};
use crate::error::{Error, Result};

fn interner() -> &'static RwLock<Vec<String>> {
    static NAMES: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    NAMES.get_or_init(|| RwLock::new(Vec::new()))
}

/// An interned indeterminate name. Ids follow first-use order, which is
/// also the order variables appear inside a rendered monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(v) = Var::lookup(name) {
            return v;
        }
        let mut names = interner().write().unwrap();
        if let Some(i) = names.iter().position(|n| n == name) {
            return Var(i as u32);
        }
        names.push(name.to_string());
        Var(names.len() as u32 - 1)
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let names = interner().read().unwrap();
        names.iter().position(|n| n == name).map(|i| Var(i as u32))
    }

    pub fn name(self) -> String {
        interner().read().unwrap()[self.0 as usize].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_pairs(mut pairs: Vec<(Var, i32)>) -> Self {
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    /// Sum of exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            f.write_str(&v.name())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate Laurent polynomial with rational coefficients.
///
/// `ψ^i` raises every indeterminate to the `i`-th power and fixes the
/// coefficients, so a sum of monomials behaves like the multiset of those
/// monomials under plethysm.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, Rational>,
}

impl Laurent {
    pub fn constant(c: Rational) -> Self {
        Laurent::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn var(name: &str) -> Self {
        Laurent::term(Rational::one(), Monomial::from_pairs(vec![(Var::new(name), 1)]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Applies `f` to every monomial, summing collisions.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Integer power; negative exponents need a single-term polynomial.
    pub fn powi(&self, k: i32) -> Option<Laurent> {
        if k >= 0 {
            Some(AdamsRing::pow(self, k as u32))
        } else {
            self.try_inverse().map(|inv| AdamsRing::pow(&inv, (-k) as u32))
        }
    }
}

impl AdamsRing for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }

    fn one() -> Self {
        Laurent::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn from_rational(q: &Rational) -> Self {
        Laurent::constant(q.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn adams(&self, i: usize) -> Self {
        assert!(i >= 1, "Adams operations are indexed from 1");
        let k = i as i32;
        // scaling exponents is injective, so no collisions
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(k), c.clone()))
                .collect(),
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(Laurent::term(c.recip(), m.pow(-1)))
    }

    fn indeterminate(name: &str) -> Option<Self> {
        Some(Laurent::var(name))
    }

    fn to_laurent(&self) -> Laurent {
        self.clone()
    }

    fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let mut p = ScalarParser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let value = p.sum();
        match value {
            Some(v) if p.pos == p.chars.len() => Ok(v),
            _ => Err(Error::MalformedScalar(s.to_string())),
        }
    }
}

/// Reads the rendered form: sums and differences of products of rationals,
/// indeterminates with optional integer exponents, and parenthesized sums.
/// Both `*` and `·` multiply.
struct ScalarParser {
    chars: Vec<char>,
    pos: usize,
}

impl ScalarParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Option<Laurent> {
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.pos += 1;
        }
        let first = self.product()?;
        let mut acc = if negate { first.neg_ref() } else { first };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == '+' { acc.add_ref(&rhs) } else { acc.sub_ref(&rhs) };
        }
        Some(acc)
    }

    fn product(&mut self) -> Option<Laurent> {
        let mut acc = self.factor()?;
        while let Some('*' | '·') = self.peek() {
            self.pos += 1;
            acc = acc.mul_ref(&self.factor()?);
        }
        Some(acc)
    }

    fn integer(&mut self) -> Option<num_bigint::BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn factor(&mut self) -> Option<Laurent> {
        let base = match self.peek()? {
            '(' => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return None;
                }
                self.pos += 1;
                inner
            }
            c if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    1.into()
                };
                if den == 0.into() {
                    return None;
                }
                return Some(Laurent::constant(Rational::new(num, den)));
            }
            c if c.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric()) {
                    self.pos += 1;
                }
                Laurent::var(&self.chars[start..self.pos].iter().collect::<String>())
            }
            _ => return None,
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let negative = self.peek() == Some('-');
            if negative {
                self.pos += 1;
            }
            let k: i32 = self.integer()?.try_into().ok()?;
            return base.powi(if negative { -k } else { k });
        }
        Some(base)
    }
}

impl fmt::Display for Laurent {
    /// Renders like `x^2·y^-1 - 1/2·z + 3`: higher total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
