use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed partition literal `{0}`")]
    MalformedPartition(String),

    #[error("partition {partition} has weight {weight}, above the degree bound {bound}")]
    WeightExceedsBound {
        partition: Partition,
        weight: usize,
        bound: usize,
    },

    #[error("Exp_sigma needs a series with zero constant term (got constant term {0})")]
    NonzeroConstantTerm(String),

    #[error("{op} needs a series with constant term 1 (got {constant})")]
    ConstantTermNotOne { op: &'static str, constant: String },

    #[error("plethysm g∘f diverges: f has nonzero constant term {0} and g is a truncated series")]
    DivergentPlethysm(String),

    #[error("expected a rational coefficient, found `{0}`")]
    NotRational(String),

    #[error("cannot parse scalar `{0}`")]
    MalformedScalar(String),

    #[error("unknown indeterminate `{0}` for this coefficient ring")]
    UnknownIndeterminate(String),

    #[error("invalid random variable: {0}")]
    InvalidRandomVariable(String),

    #[error(
        "query outside the stable range: |tau| = {weight} > n = {n}; the generating series only \
         determines dimensions modulo the degree filtration Fil_deg>{n}"
    )]
    Unstable { weight: usize, n: usize },

    #[error("Sp(n) needs even n, got {0}")]
    OddSymplecticRank(usize),

    #[error("n must be positive")]
    ZeroRank,

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("{0}")]
    Eval(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
