use serde::{Deserialize, Serialize};

use super::{basis::from_basis, to_basis, Basis, SymSeries};
use crate::error::Result;
use crate::partition::Partition;
use crate::ring::AdamsRing;

/// Wire form of a series: `{"degree_bound", "basis", "terms": [{"partition", "coeff"}]}`,
/// terms in partition order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub degree_bound: usize,
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Partition,
    pub coeff: String,
}

pub fn series_to_json<R: AdamsRing>(f: &SymSeries<R>, basis: Basis) -> SeriesJson {
    SeriesJson {
        degree_bound: f.degree_bound(),
        basis,
        terms: to_basis(f, basis)
            .into_iter()
            .map(|(partition, c)| TermJson {
                partition,
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn series_from_json<R: AdamsRing>(json: &SeriesJson) -> Result<SymSeries<R>> {
    let coeffs = json
        .terms
        .iter()
        .map(|t| Ok((t.partition.clone(), R::parse_scalar(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    from_basis(json.basis, coeffs, json.degree_bound)
}

pub(crate) fn atom(basis: Basis, tau: &Partition) -> String {
    match basis {
        Basis::E | Basis::H | Basis::P if tau.length() == 1 => {
            format!("{}_{}", basis.letter(), tau.parts()[0])
        }
        _ => format!("{}_{}", basis.letter(), tau),
    }
}

/// Renders `f` in `basis` as an expression the CLI parser reads back,
/// e.g. `1 + h_1 - 1/2*m_[1,1] + (x + y)*s_[2,1]`.
pub fn render<R: AdamsRing>(f: &SymSeries<R>, basis: Basis) -> String {
    let coeffs = to_basis(f, basis);
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (tau, c)) in coeffs.iter().enumerate() {
        let term = if tau.is_empty() {
            c.to_string()
        } else if c.is_one() {
            atom(basis, tau)
        } else if c.neg_ref().is_one() {
            format!("-{}", atom(basis, tau))
        } else if c.needs_parens() {
            format!("({c})*{}", atom(basis, tau))
        } else {
            format!("{c}*{}", atom(basis, tau))
        };
        if i == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}
