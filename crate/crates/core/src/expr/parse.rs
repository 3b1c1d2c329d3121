use num_bigint::BigInt;

use super::{Expr, Func};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::Rational;
use crate::symseries::Basis;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Underscore,
    LBracket,
    RBracket,
    EmptySet,
    Comma,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
            Tok::Underscore => "`_`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::EmptySet => "`∅`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
        }
    }
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(chars[start..i].iter().collect()), start));
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && chars[i].is_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            '_' => Tok::Underscore,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '∅' => Tok::EmptySet,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.column(),
                format!("expected {what}, found {}", self.peek().describe()),
            ))
        }
    }

    fn nat(&mut self, what: &str) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n.parse().expect("lexer only emits digits"))
            }
            other => Err(syntax(self.column(), format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn small_nat(&mut self, what: &str) -> Result<usize> {
        let col = self.column();
        let n = self.nat(what)?;
        usize::try_from(n).map_err(|_| syntax(col, format!("{what} is too large")))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let col = self.column();
        let k = self.nat("an integer exponent")?;
        let k = i32::try_from(k).map_err(|_| syntax(col, "exponent is too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn partition(&mut self) -> Result<Partition> {
        if *self.peek() == Tok::EmptySet {
            self.bump();
            return Ok(Partition::empty());
        }
        let open = self.column();
        self.expect(Tok::LBracket, "a partition like `[2,1]`")?;
        let mut parts = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                let col = self.column();
                let p = self.small_nat("a partition part")?;
                if p == 0 {
                    return Err(syntax(col, "malformed partition literal: parts must be positive"));
                }
                parts.push(p);
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RBracket => break,
                    other => {
                        return Err(syntax(
                            self.column(),
                            format!(
                                "malformed partition literal opened at column {open}: expected `,` or `]`, found {}",
                                other.describe()
                            ),
                        ))
                    }
                }
            }
        }
        self.bump();
        Ok(Partition::new(parts))
    }

    fn primary(&mut self) -> Result<Expr> {
        let col = self.column();
        match self.peek().clone() {
            Tok::Num(_) => {
                let num = self.nat("a number")?;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_col = self.column();
                    let den = self.nat("a denominator")?;
                    if den == BigInt::from(0) {
                        return Err(syntax(den_col, "zero denominator"));
                    }
                    return Ok(Expr::Number(Rational::new(num, den)));
                }
                Ok(Expr::Number(Rational::from_integer(num)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::Underscore {
                    return self.atom(&name, col);
                }
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name)
                        .ok_or_else(|| syntax(col, format!("unknown function `{name}`")))?;
                    return self.apply(func, col);
                }
                if Func::from_name(&name).is_some() {
                    return Err(syntax(self.column(), format!("expected `(` after `{name}`")));
                }
                Ok(Expr::Var(name))
            }
            Tok::Underscore if matches!(self.peek_at(1), Tok::Num(_) | Tok::LBracket) => {
                Err(syntax(col, "missing basis letter before `_`"))
            }
            other => Err(syntax(col, format!("expected an expression, found {}", other.describe()))),
        }
    }

    fn atom(&mut self, name: &str, col: usize) -> Result<Expr> {
        let basis = match name {
            "e" => Basis::E,
            "h" => Basis::H,
            "p" => Basis::P,
            "m" => Basis::M,
            "s" => Basis::S,
            _ => return Err(syntax(col, format!("unknown basis `{name}` (expected e, h, p, m or s)"))),
        };
        self.bump();
        let index = match (basis, self.peek()) {
            (Basis::E | Basis::H | Basis::P, Tok::Num(_)) => {
                let k = self.small_nat("an index")?;
                Partition::row(k)
            }
            (Basis::E | Basis::H | Basis::P, Tok::LBracket | Tok::EmptySet) => self.partition()?,
            (Basis::E | Basis::H | Basis::P, other) => {
                return Err(syntax(
                    self.column(),
                    format!("expected an index after `{name}_`, found {}", other.describe()),
                ))
            }
            _ => self.partition()?,
        };
        Ok(Expr::Atom(basis, index))
    }

    fn apply(&mut self, func: Func, col: usize) -> Result<Expr> {
        self.bump();
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        if args.len() != func.arity() {
            return Err(syntax(
                col,
                format!(
                    "{} takes {} argument{}, got {}",
                    func.name(),
                    func.arity(),
                    if func.arity() == 1 { "" } else { "s" },
                    args.len()
                ),
            ));
        }
        Ok(Expr::Apply(func, args))
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.column(), format!("unexpected {}", p.peek().describe())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn column_of(src: &str) -> usize {
        match parse(src) {
            Err(Error::Syntax { column, .. }) => column,
            other => panic!("expected a syntax error for {src:?}, got {other:?}"),
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse("omegat(h_2)").unwrap(),
            Expr::Apply(Func::OmegaTilde, vec![Expr::Atom(Basis::H, p(&[2]))])
        );
        assert_eq!(
            parse("inner(exp(e_2), m_[1,1])").unwrap(),
            Expr::Apply(
                Func::Inner,
                vec![
                    Expr::Apply(Func::Exp, vec![Expr::Atom(Basis::E, p(&[2]))]),
                    Expr::Atom(Basis::M, p(&[1, 1])),
                ]
            )
        );
        assert_eq!(column_of("h_"), 2);
        assert_eq!(Error::Syntax { column: 2, message: "x".into() }.to_string(), "syntax error at column 2: x");
    }

    #[test]
    fn precedence_and_literals() {
        let e = parse("1 - 3/2*x^-1·y + -h_[2,1]").unwrap();
        let expected = Expr::Add(
            Box::new(Expr::Sub(
                Box::new(Expr::Number(Rational::from_integer(1.into()))),
                Box::new(Expr::Mul(
                    Box::new(Expr::Mul(
                        Box::new(Expr::Number(Rational::new(3.into(), 2.into()))),
                        Box::new(Expr::Pow(Box::new(Expr::Var("x".into())), -1)),
                    )),
                    Box::new(Expr::Var("y".into())),
                )),
            )),
            Box::new(Expr::Neg(Box::new(Expr::Atom(Basis::H, p(&[2, 1]))))),
        );
        assert_eq!(e, expected);
        assert_eq!(parse("m_∅").unwrap(), Expr::Atom(Basis::M, Partition::empty()));
        assert_eq!(parse("s_[]").unwrap(), Expr::Atom(Basis::S, Partition::empty()));
    }

    #[test]
    fn errors() {
        assert_eq!(column_of("m_[1,,2]"), 5);
        assert_eq!(column_of("m_[1,0]"), 5);
        assert_eq!(column_of("m_2"), 2);
        assert_eq!(column_of("q_2"), 0);
        assert_eq!(column_of("foo(h_1)"), 0);
        assert_eq!(column_of("inner(h_1)"), 0);
        assert_eq!(column_of("pow(h_1, 2, 3)"), 0);
        assert_eq!(column_of("h_1 h_2"), 4);
        assert_eq!(column_of("(h_1"), 4);
        assert_eq!(column_of("1/0"), 2);
        assert_eq!(column_of("h_1 $"), 4);
        assert_eq!(column_of("exp"), 3);
        assert_eq!(column_of(""), 0);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "omegat(h_2)",
            "inner(exp(e_2), m_[1,1])",
            "1 - 3/2*x^-1*y + -h_[2,1]",
            "-(h_1 + h_2)*(p_3 - (p_1 - p_2))",
            "pleth(p_2, s_[2,1]) - pow(1 + h_1, x)^2",
            "(x^2)^3 - --e_4",
        ] {
            let e = parse(src).unwrap();
            let shown = e.to_string();
            assert_eq!(parse(&shown).unwrap(), e, "{src} -> {shown}");
        }
    }
}
