use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::int;
use crate::exact::Scalar;

/// Exponent vector over the generators of a presentation.
pub type Monomial = Vec<u32>;

/// Polynomial with exact coefficients, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Polynomial::monomial(vec![0; nvars], c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(mul_monomials(m1, m2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32, nvars: usize) -> Polynomial {
        let mut p = Polynomial::constant(Scalar::one(), nvars);
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    /// Leading term under the given order.
    pub fn leading<'a>(
        &'a self,
        order: &impl Fn(&Monomial, &Monomial) -> Ordering,
    ) -> Option<(&'a Monomial, &'a Scalar)> {
        self.terms.iter().max_by(|a, b| order(a.0, b.0))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

pub fn mul_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn div_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `x^2*y` style rendering; the empty product is `1`.
pub fn format_monomial(m: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A polynomial together with the generator names it is written in.
pub struct Display<'a>(pub &'a Polynomial, pub &'a [String]);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.0.terms.iter().rev().enumerate() {
            let mono = format_monomial(m, self.1);
            let neg = c.is_negative();
            let a = c.abs();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (a.is_one(), mono.as_str()) {
                (true, _) => write!(f, "{mono}")?,
                (false, "1") => write!(f, "{a}")?,
                (false, _) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    line: usize,
    end: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<u64>().map_err(|_| Error::Parse {
                line,
                column: col,
                message: format!("integer `{s}` is too large"),
            })?;
            out.push((Tok::Int(v), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Parse {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut sign = Scalar::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some(Tok::Plus) => sign = Scalar::one(),
                Some(Tok::Minus) => sign = -Scalar::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    if k > 64 {
                        return self.err("exponent larger than 64");
                    }
                    self.pos += 1;
                    return Ok(base.pow(k as u32, self.names.len()));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(int(v as i64), n))
            }
            Some(Tok::Ident(name)) => {
                let Some(k) = self.names.iter().position(|g| *g == name) else {
                    return self.err(format!("unknown generator `{name}`"));
                };
                self.pos += 1;
                let mut m = vec![0; n];
                m[k] = 1;
                Ok(Polynomial::monomial(m, Scalar::one()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in the given generators: integer literals, `+`, `-`,
/// `*`, `^` with a literal exponent and parentheses. Errors carry the given
/// line and the 1-based column within `text`.
pub fn parse_polynomial(text: &str, names: &[String], line: usize) -> Result<Polynomial> {
    let toks = tokenize(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        line,
        end: text.chars().count() + 1,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_and_prints() {
        let p = parse_polynomial("x^2 - 3*x*y + 2", &names(), 1).unwrap();
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[&vec![1, 1]], int(-3));
        let q = parse_polynomial("(x + y)^2 - x^2 - y^2", &names(), 1).unwrap();
        assert_eq!(q, Polynomial::monomial(vec![1, 1], int(2)));
        assert_eq!(Display(&q, &names()).to_string(), "2*x*y");
    }

    #[test]
    fn positioned_errors() {
        match parse_polynomial("x^2 + 2y", &names(), 3) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 8)),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x + z", &names(), 1) {
            Err(Error::Parse {
                column, message, ..
            }) => {
                assert_eq!(column, 5);
                assert!(message.contains('z'));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x +", &names(), 1).is_err());
        assert!(parse_polynomial("x $ y", &names(), 1).is_err());
    }
}
