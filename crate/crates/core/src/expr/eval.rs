use serde_json::json;

use super::{parse, Expr, Func};
use crate::error::{Error, Result};
use crate::ring::{AdamsRing, Rational};
use crate::symseries::{
    basis_element, exp_sigma, log_sigma, plethysm, plethysm_on_scalar, pow_structure, render,
    series_to_json, Basis, SymSeries,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub degree_bound: usize,
    /// Indeterminates the coefficient ring accepts.
    pub variables: Vec<String>,
}

impl EvalConfig {
    pub fn new(degree_bound: usize) -> Self {
        EvalConfig {
            degree_bound,
            variables: Vec::new(),
        }
    }

    pub fn with_variables(mut self, vars: &[&str]) -> Self {
        self.variables = vars.iter().map(|v| v.to_string()).collect();
        self
    }
}

/// A scalar of the coefficient ring or a series. Scalars are promoted to
/// constant series when mixed with series.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<R: AdamsRing> {
    Scalar(R),
    Series(SymSeries<R>),
}

impl<R: AdamsRing> Value<R> {
    pub fn into_series(self, degree_bound: usize) -> SymSeries<R> {
        match self {
            Value::Scalar(c) => SymSeries::constant(c, degree_bound),
            Value::Series(f) => f,
        }
    }

    /// The scalar, or the constant of a series with no other terms.
    pub fn as_scalar(&self) -> Option<R> {
        match self {
            Value::Scalar(c) => Some(c.clone()),
            Value::Series(f) if f.max_degree().unwrap_or(0) == 0 => Some(f.constant_term()),
            Value::Series(_) => None,
        }
    }

    pub fn render(&self, basis: Basis) -> String {
        match self {
            Value::Scalar(c) => c.to_string(),
            Value::Series(f) => render(f, basis),
        }
    }

    pub fn to_json(&self, basis: Basis) -> serde_json::Value {
        match self {
            Value::Scalar(c) => json!({ "scalar": c.to_string() }),
            Value::Series(f) => serde_json::to_value(series_to_json(f, basis)).expect("plain data"),
        }
    }
}

fn binary<R: AdamsRing>(
    a: Value<R>,
    b: Value<R>,
    d: usize,
    scalar: impl Fn(&R, &R) -> R,
    series: impl Fn(&SymSeries<R>, &SymSeries<R>) -> SymSeries<R>,
) -> Value<R> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(scalar(&x, &y)),
        (a, b) => Value::Series(series(&a.into_series(d), &b.into_series(d))),
    }
}

fn series_op<R: AdamsRing>(v: Value<R>, op: impl Fn(&SymSeries<R>) -> SymSeries<R>) -> Value<R> {
    match v {
        // the involutions fix degree 0
        Value::Scalar(c) => Value::Scalar(c),
        Value::Series(f) => Value::Series(op(&f)),
    }
}

pub fn eval<R: AdamsRing>(expr: &Expr, cfg: &EvalConfig) -> Result<Value<R>> {
    let d = cfg.degree_bound;
    Ok(match expr {
        Expr::Atom(b, tau) => Value::Series(basis_element(*b, tau, d)?),
        Expr::Number(q) => Value::Scalar(R::from_rational(q)),
        Expr::Var(name) => {
            if !cfg.variables.iter().any(|v| v == name) {
                return Err(Error::UnknownIndeterminate(name.clone()));
            }
            Value::Scalar(R::indeterminate(name).ok_or_else(|| Error::UnknownIndeterminate(name.clone()))?)
        }
        Expr::Neg(x) => match eval::<R>(x, cfg)? {
            Value::Scalar(c) => Value::Scalar(c.neg_ref()),
            Value::Series(f) => Value::Series(f.neg()),
        },
        Expr::Add(a, b) => binary(eval(a, cfg)?, eval(b, cfg)?, d, R::add_ref, SymSeries::add),
        Expr::Sub(a, b) => binary(eval(a, cfg)?, eval(b, cfg)?, d, R::sub_ref, SymSeries::sub),
        Expr::Mul(a, b) => binary(eval(a, cfg)?, eval(b, cfg)?, d, R::mul_ref, SymSeries::mul),
        Expr::Pow(x, k) => {
            let v = eval::<R>(x, cfg)?;
            let e = k.unsigned_abs();
            match v {
                Value::Scalar(c) if *k < 0 => Value::Scalar(
                    c.try_inverse()
                        .ok_or_else(|| Error::Eval(format!("{c} is not invertible")))?
                        .pow(e),
                ),
                Value::Scalar(c) => Value::Scalar(c.pow(e)),
                Value::Series(_) if *k < 0 => {
                    return Err(Error::Eval("negative powers of series are not supported".into()))
                }
                Value::Series(f) => Value::Series(f.pow(e)),
            }
        }
        Expr::Apply(func, args) => {
            let mut vals = args.iter().map(|a| eval::<R>(a, cfg)).collect::<Result<Vec<_>>>()?;
            let second = if vals.len() > 1 { Some(vals.pop().expect("two arguments")) } else { None };
            let first = vals.pop().expect("one argument");
            match func {
                Func::Omega => series_op(first, SymSeries::omega),
                Func::OmegaTilde => series_op(first, SymSeries::omega_tilde),
                Func::Flip => series_op(first, SymSeries::degree_flip),
                Func::Exp => Value::Series(exp_sigma(&first.into_series(d))?),
                Func::Log => Value::Series(log_sigma(&first.into_series(d))?),
                Func::Pow => {
                    let r = second
                        .expect("arity checked by the parser")
                        .as_scalar()
                        .ok_or_else(|| Error::Eval("the exponent of pow must be a scalar".into()))?;
                    Value::Series(pow_structure(&first.into_series(d), &r)?)
                }
                Func::Pleth => {
                    let g = first.into_series(d);
                    let g = g.to_rational().ok_or_else(|| Error::NotRational(render(&g, Basis::P)))?;
                    match second.expect("arity checked by the parser") {
                        Value::Scalar(x) => Value::Scalar(plethysm_on_scalar(&g, &x)),
                        Value::Series(f) => Value::Series(plethysm(&g, &f)?),
                    }
                }
                Func::Inner => {
                    let g = second.expect("arity checked by the parser").into_series(d);
                    Value::Scalar(first.into_series(d).hall_inner(&g))
                }
            }
        }
    })
}

pub fn eval_str<R: AdamsRing>(src: &str, cfg: &EvalConfig) -> Result<Value<R>> {
    eval(&parse(src)?, cfg)
}

/// Convenience for rational arithmetic in tests and examples.
pub fn eval_rational(src: &str, degree_bound: usize) -> Result<Value<Rational>> {
    eval_str(src, &EvalConfig::new(degree_bound))
}
