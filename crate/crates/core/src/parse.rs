//! Text grammar for polynomials and the canonical printer.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nat)?
//! atom     := rational | variable | '(' expr ')'
//! rational := int ('/' nat)?
//! variable := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored and multiplication must be written out. The printer
//! emits terms in descending graded-lex order, so `parse(print(f)) == f`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polycore::{Monomial, PolyError, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponents are not allowed")]
    NegativeExponent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent {0} exceeds the ring's cap")]
    ExponentTooLarge(String),
    #[error("{0}")]
    Arithmetic(PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: i,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::Unexpected {
                expected,
                found: t.describe(),
            }),
            None => self.err(ParseErrorKind::UnexpectedEnd(expected)),
        }
    }

    fn arith<T>(&self, at: usize, r: Result<T, PolyError>) -> Result<T, ParseError> {
        r.map_err(|e| ParseError {
            kind: ParseErrorKind::Arithmetic(e),
            position: at,
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.arith(at, acc.try_add(&t))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.arith(at, acc.try_sub(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let at = self.offset();
            self.pos += 1;
            let f = self.factor()?;
            acc = self.arith(at, acc.try_mul(&f))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek() {
            Some(Tok::Minus) => Err(self.err(ParseErrorKind::NegativeExponent)),
            Some(Tok::Int(n)) => {
                let n = n.clone();
                let exp = n
                    .to_u32()
                    .filter(|&e| e <= self.ring.exponent_cap())
                    .ok_or_else(|| self.err(ParseErrorKind::ExponentTooLarge(n.to_string())))?;
                self.pos += 1;
                self.arith(at, base.try_pow(exp))
            }
            _ => Err(self.unexpected("an exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(self.err(ParseErrorKind::ZeroDenominator));
                            }
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        _ => return Err(self.unexpected("a denominator")),
                    }
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                None => Err(self.err(ParseErrorKind::UnknownVariable(name))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Parses a rational literal such as `-3`, `7/2` or `-1/6`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let ring = Ring::new(Vec::<String>::new()).expect("empty ring");
    let p = parse_polynomial(text, &ring)?;
    Ok(p.constant_term())
}

/// Comma-separated coordinates, e.g. `1, 0, 1/2, -3, 0`.
pub fn parse_point(text: &str, ring: &Arc<Ring>) -> Result<crate::polycore::Point, ParseError> {
    let mut coords = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let c = parse_rational(part).map_err(|e| ParseError {
            position: e.position + offset,
            ..e
        })?;
        coords.push(c);
        offset += part.len() + 1;
    }
    crate::polycore::Point::new(ring, coords).map_err(|e| ParseError {
        kind: ParseErrorKind::Arithmetic(e),
        position: 0,
    })
}

/// A Laurent element `num/y^k`, `num/y` or plain `num`. The text after the
/// last `/` is read as a denominator only when it is a ring variable with an
/// optional exponent, so `1/2*s` stays a polynomial.
pub fn parse_laurent(text: &str, ring: &Arc<Ring>) -> Result<crate::polycore::LaurentElement, ParseError> {
    let arith = |e: PolyError| ParseError {
        kind: ParseErrorKind::Arithmetic(e),
        position: 0,
    };
    if let Some(cut) = text.rfind('/') {
        let denom = text[cut + 1..].trim();
        let (var, power) = match denom.split_once('^') {
            Some((v, k)) => (v.trim(), k.trim().parse::<u32>().ok()),
            None => (denom, Some(1)),
        };
        if let (Some(index), Some(power)) = (ring.index_of(var), power) {
            let num = parse_polynomial(&text[..cut], ring)?;
            return crate::polycore::LaurentElement::new(num, ring.var_name(index), power).map_err(arith);
        }
    }
    Ok(crate::polycore::LaurentElement::from_polynomial(
        parse_polynomial(text, ring)?,
        0,
    ))
}

/// Splits `x, s ,t` into trimmed variable names.
pub fn parse_var_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn power_text(ring: &Ring, i: usize, e: u32) -> String {
    if e == 1 {
        ring.var_name(i).to_string()
    } else {
        format!("{}^{}", ring.var_name(i), e)
    }
}

fn push_signed(out: &mut String, c: &Rational) {
    let negative = c.is_negative();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
}

fn format_term(ring: &Ring, c: &Rational, m: &Monomial, param: Option<usize>) -> String {
    let mut factors = Vec::new();
    if let Some(p) = param {
        if m.exponent(p) > 0 {
            factors.push(power_text(ring, p, m.exponent(p)));
        }
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 && Some(i) != param {
            factors.push(power_text(ring, i, e));
        }
    }
    let abs = c.abs();
    if factors.is_empty() {
        return abs.to_string();
    }
    if !abs.is_one() {
        factors.insert(0, abs.to_string());
    }
    factors.join("*")
}

/// Canonical text: terms in descending graded-lex order, `0` for zero.
pub fn print_canonical(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let ring = f.ring();
    let mut out = String::new();
    for (m, c) in f.terms().rev() {
        push_signed(&mut out, c);
        out.push_str(&format_term(ring, c, m, None));
    }
    out
}

/// Prints `f` as a polynomial in the variable `param`: ascending powers of the
/// parameter, each written right after the coefficient, with the remaining
/// factors in canonical order. `u + r*t + 1/2*r^2*s` is typical output.
pub fn print_in_parameter(f: &Polynomial, param: &str) -> Result<String, PolyError> {
    let ring = f.ring();
    let p = ring.var_index(param)?;
    if f.is_zero() {
        return Ok("0".into());
    }
    let mut terms: Vec<(&Monomial, &Rational)> = f.terms().collect();
    terms.sort_by(|a, b| a.0.exponent(p).cmp(&b.0.exponent(p)).then_with(|| b.0.cmp(a.0)));
    let mut out = String::new();
    for (m, c) in terms {
        push_signed(&mut out, c);
        out.push_str(&format_term(ring, c, m, Some(p)));
    }
    Ok(out)
}
