//! The expression language of the `lsym` tool.
//!
//! ```text
//! expr      := term (('+' | '-') term)*
//! term      := unary (('*' | '·') unary)*
//! unary     := '-' unary | power
//! power     := primary ('^' '-'? nat)?
//! primary   := atom | func '(' expr (',' expr)* ')' | '(' expr ')'
//! atom      := ('e' | 'h' | 'p') '_' (nat | partition)
//!            | ('m' | 's') '_' partition
//!            | nat ('/' nat)?
//!            | ident
//! partition := '[' (nat (',' nat)*)? ']' | '∅'
//! func      := omega | omegat | flip | exp | log | pow | pleth | inner
//! ```
//!
//! Identifiers other than function names are indeterminates of the
//! coefficient ring. Columns in syntax errors count characters from 0.

mod eval;
mod parse;

use std::fmt;

use crate::partition::Partition;
use crate::ring::Rational;
use crate::symseries::Basis;

pub use eval::{eval, eval_rational, eval_str, EvalConfig, Value};
pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Omega,
    OmegaTilde,
    Flip,
    Exp,
    Log,
    Pow,
    Pleth,
    Inner,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Omega,
        Func::OmegaTilde,
        Func::Flip,
        Func::Exp,
        Func::Log,
        Func::Pow,
        Func::Pleth,
        Func::Inner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Omega => "omega",
            Func::OmegaTilde => "omegat",
            Func::Flip => "flip",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Pow => "pow",
            Func::Pleth => "pleth",
            Func::Inner => "inner",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Pow | Func::Pleth | Func::Inner => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Atom(Basis, Partition),
    Number(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Apply(Func, Vec<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Number(q) if *q < Rational::from_integer(0.into()) => 0,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Atom(b, tau) => f.write_str(&crate::symseries::atom_name(*b, tau)),
            Expr::Number(q) => write!(f, "{q}"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.fmt_at(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(x, k) => {
                x.fmt_at(f, 5)?;
                write!(f, "^{k}")
            }
            Expr::Apply(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.fmt_at(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Source form; `parse(&e.to_string())` reproduces any parsed `e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
