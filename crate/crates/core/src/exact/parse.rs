//! Recursive-descent parser for polynomial expressions in `t`, `u` and
//! named parameters, e.g. `t^6 - 2*b*t^3 + 1` or `(3/2)*t^-2 + b*t^3*u`.
//!
//! `t` may carry negative exponents; `u` and parameters may not. Division
//! is allowed only by nonzero rational constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::laurent::LaurentPoly;
use crate::exact::param_poly::ParamPoly;
use crate::exact::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at column {}\n  {input}\n  {caret}", .column + 1)]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
    caret: String,
}

impl ParseError {
    /// `pos` is a byte offset into `input`.
    pub fn new(input: &str, pos: usize, message: &str) -> Self {
        let column = input[..pos.min(input.len())].chars().count();
        ParseError {
            input: input.to_string(),
            column,
            message: message.to_string(),
            caret: format!("{}^", " ".repeat(column)),
        }
    }
}

/// A parsed expression: map `(t exponent, u exponent) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedExpr {
    terms: BTreeMap<(i64, u32), ParamPoly>,
}

impl ParsedExpr {
    fn constant(c: ParamPoly) -> Self {
        let mut e = Self::default();
        e.add((0, 0), c);
        e
    }

    fn add(&mut self, key: (i64, u32), c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn plus(mut self, other: ParsedExpr, sign: i64) -> ParsedExpr {
        for (k, c) in other.terms {
            self.add(k, if sign < 0 { -c } else { c });
        }
        self
    }

    fn times(&self, other: &ParsedExpr) -> ParsedExpr {
        let mut out = ParsedExpr::default();
        for ((t1, u1), c1) in &self.terms {
            for ((t2, u2), c2) in &other.terms {
                out.add((t1 + t2, u1 + u2), c1 * c2);
            }
        }
        out
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).and_then(ParamPoly::as_constant),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &ParamPoly)> {
        self.terms.iter().map(|((t, u), c)| (*t, *u, c))
    }

    pub fn max_u_power(&self) -> u32 {
        self.terms.keys().map(|(_, u)| *u).max().unwrap_or(0)
    }

    /// Collects the coefficient of `u^k` as a Laurent polynomial in `t`.
    pub fn u_component(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((t, u), c) in &self.terms {
            if *u == k {
                out.add_term(*t, c.clone());
            }
        }
        out
    }
}

pub fn parse_expr(input: &str) -> Result<ParsedExpr, ParseError> {
    let mut p = Parser { input, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses an expression free of `t` and `u`.
pub fn parse_param_poly(input: &str) -> Result<ParamPoly, ParseError> {
    let e = parse_expr(input)?;
    if e.terms.keys().any(|k| *k != (0, 0)) {
        return Err(ParseError::new(
            input,
            0,
            "expected an expression in parameters only (no t or u)",
        ));
    }
    Ok(e.terms.get(&(0, 0)).cloned().unwrap_or_default())
}

/// Parses an expression in `t` (no `u`).
pub fn parse_laurent(input: &str) -> Result<LaurentPoly, ParseError> {
    let e = parse_expr(input)?;
    if e.max_u_power() > 0 {
        return Err(ParseError::new(
            input,
            input.find('u').unwrap_or(0),
            "`u` is not allowed here",
        ));
    }
    Ok(e.u_component(0))
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(self.input, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn peek_tok(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn expr(&mut self) -> Result<ParsedExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek_tok() {
                Some('+') => {
                    self.bump();
                    acc = acc.plus(self.term()?, 1);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.plus(self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParsedExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_tok() {
                Some('*') => {
                    self.bump();
                    acc = acc.times(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    let at = self.pos;
                    let divisor = self.unary()?;
                    let d = divisor.as_rational().ok_or_else(|| {
                        ParseError::new(self.input, at, "division only by rational constants")
                    })?;
                    if d.is_zero() {
                        return Err(ParseError::new(self.input, at, "division by zero"));
                    }
                    acc = acc.times(&ParsedExpr::constant(ParamPoly::constant(d.recip())));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ParsedExpr, ParseError> {
        match self.peek_tok() {
            Some('-') => {
                self.bump();
                Ok(ParsedExpr::default().plus(self.unary()?, -1))
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ParsedExpr, ParseError> {
        let base_pos = self.pos;
        let base = self.atom()?;
        if self.peek_tok() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos;
        let exp = self.signed_int()?;
        if exp >= 0 {
            let mut acc = ParsedExpr::constant(ParamPoly::one());
            for _ in 0..exp {
                acc = acc.times(&base);
            }
            return Ok(acc);
        }
        // Negative powers: a single t-monomial or a nonzero rational.
        if let Some(r) = base.as_rational() {
            if r.is_zero() {
                return Err(ParseError::new(
                    self.input,
                    base_pos,
                    "zero raised to a negative power",
                ));
            }
            return Ok(ParsedExpr::constant(ParamPoly::constant(num_traits::pow(
                r.recip(),
                (-exp) as usize,
            ))));
        }
        if base.terms.len() == 1 {
            let ((t, u), c) = base.terms.iter().next().unwrap();
            if *u == 0 && c.is_one() {
                let mut out = ParsedExpr::default();
                out.add((t * exp, 0), ParamPoly::one());
                return Ok(out);
            }
        }
        Err(ParseError::new(
            self.input,
            exp_pos,
            "negative exponents are allowed only on t",
        ))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.bump();
            let v = self.signed_int()?;
            if self.peek_tok() != Some(')') {
                return Err(self.error("expected `)`"));
            }
            self.bump();
            return Ok(v);
        }
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let v: i64 = self.input[start..self.pos]
            .parse()
            .map_err(|_| self.error("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<ParsedExpr, ParseError> {
        match self.peek_tok() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek_tok() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let v: BigInt = self.input[start..self.pos].parse().expect("digits");
                Ok(ParsedExpr::constant(ParamPoly::constant(
                    Rational::from_integer(v),
                )))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.bump();
                }
                let mut out = ParsedExpr::default();
                match &self.input[start..self.pos] {
                    "t" => out.add((1, 0), ParamPoly::one()),
                    "u" => out.add((0, 1), ParamPoly::one()),
                    name => out.add((0, 0), ParamPoly::var(name)),
                }
                Ok(out)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl fmt::Display for ParsedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((t, u), c)| format!("({c})*t^{t}*u^{u}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    #[test]
    fn parse_curve_polynomial() {
        let p = parse_laurent("t^6 - 2*b*t^3 + 1").unwrap();
        assert_eq!(p.to_string(), "t^6 - 2*b*t^3 + 1");
        assert_eq!(p.coeff(3), ParamPoly::var("b").scale(&rat(-2)));
    }

    #[test]
    fn rational_coefficients_and_negative_powers() {
        let e = parse_expr("(3/2)*t^-2 + b*t^3*u").unwrap();
        assert_eq!(e.u_component(0).coeff(-2), ParamPoly::constant(ratio(3, 2)));
        assert_eq!(e.u_component(1).coeff(3), ParamPoly::var("b"));
        let q = parse_param_poly("1/35*(32*c^2-5)").unwrap();
        assert_eq!(q.to_string(), "32/35*c^2 - 1/7");
        assert_eq!(parse_laurent("t^(-3)").unwrap(), LaurentPoly::t_pow(-3));
    }

    #[test]
    fn round_trip_canonical_strings() {
        for s in ["32/35*c^2 - 1/7", "5/8*b^3 - 1/8*b", "-3*a0*b + 2"] {
            assert_eq!(parse_param_poly(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn caret_diagnostics() {
        let err = parse_expr("t^2 + * b").unwrap_err();
        assert_eq!(err.column, 6);
        assert!(err.to_string().contains("      ^"));
        assert!(parse_expr("b^-1").is_err());
        assert!(parse_expr("t/b").is_err());
        assert!(parse_expr("(t+1").is_err());
    }
}
