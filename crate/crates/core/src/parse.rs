//! Reader for the textual grammar used by [`Scalar`] and [`XPoly`] rendering.
//!
//! Accepts sums and products of integers, the variables `t`, `u` and `x`,
//! integer powers (`t^-2`), parentheses, and division by `x`-free
//! subexpressions. Juxtaposition multiplies (`2x`, `t u`).

use num_bigint::BigInt;

use crate::error::Error;
use crate::scalar::{Rational, Scalar};
use crate::zsym::XPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Num(digits.parse().unwrap())));
                continue;
            }
            't' | 'u' | 'x' => out.push((col, Tok::Var(c))),
            '+' => out.push((col, Tok::Plus)),
            '-' => out.push((col, Tok::Minus)),
            '*' => out.push((col, Tok::Star)),
            '/' => out.push((col, Tok::Slash)),
            '^' => out.push((col, Tok::Caret)),
            '(' => out.push((col, Tok::LParen)),
            ')' => out.push((col, Tok::RParen)),
            other => {
                return Err(Error::Parse { column: col, message: format!("unexpected character '{other}'") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    allow_x: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, Error> {
        Err(Error::Parse { column: self.col(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<XPoly, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let d = self.unary()?;
                    acc = divide(&acc, &d, col)?;
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<XPoly, Error> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<XPoly, Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        let Some(Tok::Num(k)) = self.bump() else {
            return Err(Error::Parse { column: col, message: "expected an integer exponent".into() });
        };
        let k: i32 = k.try_into().map_err(|_| Error::Parse { column: col, message: "exponent too large".into() })?;
        let k = if neg { -k } else { k };
        raise(&base, k, col)
    }

    fn atom(&mut self) -> Result<XPoly, Error> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(XPoly::constant(Scalar::from_rational(Rational::from_integer(n)))),
            Some(Tok::Var('t')) => Ok(XPoly::constant(Scalar::t())),
            Some(Tok::Var('u')) => Ok(XPoly::constant(Scalar::u())),
            Some(Tok::Var('x')) if self.allow_x => Ok(XPoly::x()),
            Some(Tok::Var(v)) => Err(Error::Parse { column: col, message: format!("variable '{v}' not allowed here") }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.err("expected ')'")
                    }
                }
            }
            Some(t) => Err(Error::Parse { column: col, message: format!("unexpected token {t:?}") }),
            None => Err(Error::Parse { column: col, message: "unexpected end of input".into() }),
        }
    }
}

fn as_constant(p: &XPoly) -> Option<Scalar> {
    match p.degree() {
        None => Some(Scalar::zero()),
        Some(0) => Some(p.coeff(0)),
        _ => None,
    }
}

fn divide(a: &XPoly, d: &XPoly, col: usize) -> Result<XPoly, Error> {
    let Some(c) = as_constant(d) else {
        return Err(Error::Parse { column: col, message: "division by a polynomial in x".into() });
    };
    let inv = c.inverse().map_err(|_| Error::Parse { column: col, message: "division by zero".into() })?;
    Ok(a.scale(&inv))
}

fn raise(base: &XPoly, k: i32, col: usize) -> Result<XPoly, Error> {
    if k < 0 {
        let Some(c) = as_constant(base) else {
            return Err(Error::Parse { column: col, message: "negative power of a polynomial in x".into() });
        };
        let p = c.pow(k).map_err(|_| Error::Parse { column: col, message: "negative power of zero".into() })?;
        return Ok(XPoly::constant(p));
    }
    let mut acc = XPoly::one();
    for _ in 0..k {
        acc = &acc * base;
    }
    Ok(acc)
}

fn parse(src: &str, allow_x: bool) -> Result<XPoly, Error> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1, allow_x };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in `x` with coefficients in `Q(t, u)`.
pub fn parse_xpoly(src: &str) -> Result<XPoly, Error> {
    parse(src, true)
}

/// Parses an element of `Q(t, u)`.
pub fn parse_scalar(src: &str) -> Result<Scalar, Error> {
    let p = parse(src, false)?;
    Ok(as_constant(&p).expect("x is rejected by the tokenizer"))
}
