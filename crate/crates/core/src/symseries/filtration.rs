use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{basis::to_basis, Basis, SymSeries};
use crate::error::Error;
use crate::partition::Partition;
use crate::ring::AdamsRing;

/// Filtrations of `Λ^∧` spanned by monomials `m_τ` with a statistic of `τ`
/// above a threshold.
///
/// The multiplicity filtration comes in two readings: counting distinct part
/// values, or counting parts with multiplicity. Both are offered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationKind {
    /// `|τ| > n`
    Degree,
    /// number of distinct entries of `τ` `> n`
    MultDistinct,
    /// number of parts of `τ` `> n`
    MultLength,
}

impl FiltrationKind {
    pub fn statistic(self, tau: &Partition) -> usize {
        match self {
            FiltrationKind::Degree => tau.weight(),
            FiltrationKind::MultDistinct => tau.distinct_entries(),
            FiltrationKind::MultLength => tau.length(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FiltrationKind::Degree => "degree",
            FiltrationKind::MultDistinct => "mult_distinct",
            FiltrationKind::MultLength => "mult_length",
        }
    }
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FiltrationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "degree" | "deg" => Ok(FiltrationKind::Degree),
            "mult_distinct" | "distinct" => Ok(FiltrationKind::MultDistinct),
            "mult_length" | "length" => Ok(FiltrationKind::MultLength),
            other => Err(Error::Eval(format!(
                "unknown filtration `{other}` (expected degree, mult_distinct or mult_length)"
            ))),
        }
    }
}

/// The first partition (in partition order) carrying a nonzero `m`-coefficient
/// whose statistic is at most `n`, i.e. a witness that `f` is not in the
/// filtration piece.
pub fn filtration_violation<R: AdamsRing>(
    f: &SymSeries<R>,
    kind: FiltrationKind,
    n: usize,
) -> Option<(Partition, R)> {
    to_basis(f, Basis::M)
        .into_iter()
        .find(|(tau, _)| kind.statistic(tau) <= n)
}

/// Whether every nonzero `m`-coefficient of `f` sits at a partition whose
/// statistic exceeds `n`.
pub fn filtration_check<R: AdamsRing>(f: &SymSeries<R>, kind: FiltrationKind, n: usize) -> bool {
    filtration_violation(f, kind, n).is_none()
}
