//! Polynomial text syntax.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | var ('^' nat)? | '(' expr ')' ('^' nat)? | '-' factor
//! rational := int ('/' nat)?
//! ```
//!
//! Printing is canonical: terms in descending lex order, so
//! `parse(print(p)) == p` for every polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial, Rational, UniPoly};

/// Largest exponent accepted in the input.
pub const MAX_EXPONENT: u32 = 1 << 16;

/// Ordered variable names; position is the variable index, and index 0 is
/// the first variable eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
}

impl Default for Variables {
    fn default() -> Self {
        Variables { names: vec!["x".into(), "y".into()] }
    }
}

impl Variables {
    pub fn new<I, S>(names: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err("at least one variable is required".into());
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(format!("invalid variable name {n:?}"));
            }
            if names[..i].contains(n) {
                return Err(format!("duplicate variable name {n:?}"));
            }
        }
        Ok(Variables { names })
    }

    /// Parses a comma-separated list such as `"x,y,z"`.
    pub fn from_list(list: &str) -> Result<Self, String> {
        Variables::new(list.split(',').map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("v{i}"))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: &'static str },
    UnknownVariable(String),
    ExponentOverflow,
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax { expected } => write!(f, "syntax error at offset {}: expected {expected}", self.offset),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?} at offset {}", self.offset),
            ParseErrorKind::ExponentOverflow => {
                write!(f, "exponent at offset {} exceeds {MAX_EXPONENT}", self.offset)
            }
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator at offset {}", self.offset),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedExpression {
    pub source: String,
    pub poly: Polynomial,
    pub bindings: Variables,
}

pub fn parse(source: &str, vars: &Variables) -> Result<ParsedExpression, ParseError> {
    let mut p = Parser { src: source.as_bytes(), pos: 0, vars };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax { expected: "operator or end of input" }));
    }
    Ok(ParsedExpression { source: source.to_string(), poly, bindings: vars.clone() })
}

/// Parses with the given variables and returns only the polynomial.
pub fn parse_polynomial(source: &str, vars: &Variables) -> Result<Polynomial, ParseError> {
    parse(source, vars).map(|e| e.poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Variables,
}

const FACTOR_START: &str = "number, variable, '(' or '-'";

impl Parser<'_> {
    fn arity(&self) -> usize {
        self.vars.len()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { offset: self.pos, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error(ParseErrorKind::Syntax { expected: "')'" }));
                }
                if self.eat(b'^') {
                    let e = self.nat_exponent()?;
                    return Ok(inner.pow(e));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit present");
                let mut value = Rational::from_integer(num);
                if self.eat(b'/') {
                    let at = self.pos;
                    let den = self.digits().ok_or_else(|| self.error(ParseErrorKind::Syntax { expected: "natural number" }))?;
                    if den.is_zero() {
                        return Err(ParseError { offset: at, kind: ParseErrorKind::ZeroDenominator });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.arity(), value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let Some(var) = self.vars.index_of(name) else {
                    return Err(ParseError { offset: start, kind: ParseErrorKind::UnknownVariable(name.to_string()) });
                };
                let exp = if self.eat(b'^') { self.nat_exponent()? } else { 1 };
                Ok(Polynomial::term(Monomial::var(self.arity(), var, exp), Rational::one()))
            }
            _ => Err(self.error(ParseErrorKind::Syntax { expected: FACTOR_START })),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Some(s.parse().expect("decimal digits"))
    }

    fn nat_exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let n = self.digits().ok_or_else(|| self.error(ParseErrorKind::Syntax { expected: "natural number" }))?;
        match u32::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(ParseError { offset: at, kind: ParseErrorKind::ExponentOverflow }),
        }
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    out.push_str(&c.numer().to_string());
    if !c.denom().is_one() {
        out.push('/');
        out.push_str(&c.denom().to_string());
    }
}

/// Writes a signed sequence of `(|coefficient|, body)` pairs as a sum.
fn write_sum<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (i, (c, body)) in terms.enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if body.is_empty() {
            write_rational(&mut out, &a);
        } else {
            if !a.is_one() {
                write_rational(&mut out, &a);
                out.push('*');
            }
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial_body(m: &Monomial, vars: &Variables) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { vars.name(v) } else { format!("{}^{e}", vars.name(v)) })
        .collect();
    parts.join("*")
}

/// Canonical text of `p`.
pub fn format_poly(p: &Polynomial, vars: &Variables) -> String {
    write_sum(p.terms().rev().map(|(m, c)| (c, monomial_body(m, vars))))
}

/// Canonical text of a univariate polynomial in the variable `name`.
pub fn format_uni(p: &UniPoly, name: &str) -> String {
    let terms = p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(j, c)| {
        let body = match j {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{j}"),
        };
        (c, body)
    });
    write_sum(terms)
}
