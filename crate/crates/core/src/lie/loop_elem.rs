//! Elements of `g (x) R (+) Omega^1_R / dR`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::curve::{CurveSpec, Parity, RingElement};
use crate::error::{Error, Result};
use crate::exact::parse::ParseError;
use crate::exact::ParamPoly;
use crate::kaehler::CentralVector;
use crate::lie::SimpleLieAlgebra;

/// `sum c x_a (x) t^e` (even) `+ sum c x_a (x) t^e u` (odd) `+ central`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopElement {
    pub even: BTreeMap<(usize, i64), ParamPoly>,
    pub odd: BTreeMap<(usize, i64), ParamPoly>,
    pub central: CentralVector,
}

impl LoopElement {
    pub fn zero(n: usize) -> Self {
        LoopElement {
            even: BTreeMap::new(),
            odd: BTreeMap::new(),
            central: CentralVector::zero(n),
        }
    }

    /// `c x_a (x) t^e [u]`.
    pub fn monomial(a: usize, exp: i64, parity: Parity, coeff: ParamPoly, n: usize) -> Self {
        let mut out = Self::zero(n);
        out.add_term(a, exp, parity, coeff);
        out
    }

    pub fn central(v: CentralVector) -> Self {
        let mut out = Self::zero(v.n());
        out.central = v;
        out
    }

    /// `x_a (x) r` for a ring element `r`.
    pub fn from_ring(a: usize, r: &RingElement, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in r.even.terms() {
            out.add_term(a, e, Parity::Even, c.clone());
        }
        for (e, c) in r.odd.terms() {
            out.add_term(a, e, Parity::Odd, c.clone());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.central.n()
    }

    pub fn add_term(&mut self, a: usize, exp: i64, parity: Parity, coeff: ParamPoly) {
        if coeff.is_zero() {
            return;
        }
        let map = match parity {
            Parity::Even => &mut self.even,
            Parity::Odd => &mut self.odd,
        };
        let slot = map.entry((a, exp)).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            map.remove(&(a, exp));
        }
    }

    /// Every `(basis index, exponent, parity, coefficient)` term.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, Parity, &ParamPoly)> {
        let even = self.even.iter().map(|(&(a, e), c)| (a, e, Parity::Even, c));
        let odd = self.odd.iter().map(|(&(a, e), c)| (a, e, Parity::Odd, c));
        even.chain(odd)
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty() && self.central.is_zero()
    }

    /// Drops the central part.
    pub fn noncentral(&self) -> LoopElement {
        LoopElement {
            even: self.even.clone(),
            odd: self.odd.clone(),
            central: CentralVector::zero(self.n()),
        }
    }

    /// `Some(parity)` when all noncentral terms and central coordinates sit in
    /// one graded piece (`omega_0` even, `omega_k` odd); `None` otherwise or for 0.
    pub fn parity(&self) -> Option<Parity> {
        let c = self.central.coords();
        let even = !self.even.is_empty() || !c[0].is_zero();
        let odd = !self.odd.is_empty() || c[1..].iter().any(|x| !x.is_zero());
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> LoopElement {
        let mut out = LoopElement::zero(self.n());
        for (a, e, p, x) in self.terms() {
            out.add_term(a, e, p, x * c);
        }
        out.central = self.central.scale(c);
        out
    }

    pub fn add(&self, other: &LoopElement) -> Result<LoopElement> {
        if self.n() != other.n() {
            return Err(Error::SpecMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let mut out = self.clone();
        for (a, e, p, c) in other.terms() {
            out.add_term(a, e, p, c.clone());
        }
        out.central += &other.central;
        Ok(out)
    }

    pub fn sub(&self, other: &LoopElement) -> Result<LoopElement> {
        self.add(&other.scale(&ParamPoly::int(-1)))
    }

    /// Parses `;`-separated terms `x@expr` or `x⊗expr` where `x` is a basis
    /// label and `expr` a ring element, e.g. `e⊗t^2*u; h@(3/2)*t^-1`.
    /// A term `omegaK` or `c*omegaK` adds a central basis vector.
    pub fn parse(input: &str, alg: &SimpleLieAlgebra, spec: &CurveSpec) -> Result<Self> {
        let n = spec.degree();
        let mut out = LoopElement::zero(n);
        let mut offset = 0;
        for piece in input.split(';') {
            let start = offset + (piece.len() - piece.trim_start().len());
            offset += piece.len() + 1;
            let term = piece.trim();
            if term.is_empty() {
                return Err(ParseError::new(input, start, "empty term").into());
            }
            if let Some(v) = parse_central(term, n) {
                out.central += &v?;
                continue;
            }
            let (label, expr) = match term.split_once('⊗').or_else(|| term.split_once('@')) {
                Some(split) => split,
                None => {
                    return Err(
                        ParseError::new(input, start, "expected `x⊗expr` or `x@expr`").into(),
                    )
                }
            };
            let label = label.trim();
            let a = alg.index_of(label).ok_or_else(|| {
                ParseError::new(
                    input,
                    start,
                    &format!("unknown basis element `{label}` of {}", alg.name()),
                )
            })?;
            let r = RingElement::parse(expr.trim(), spec).map_err(|e| match e {
                Error::Parse(p) => {
                    let shift = start + term.len() - expr.trim_start().len();
                    Error::Parse(ParseError::new(input, shift + p.column, &p.message))
                }
                other => other,
            })?;
            out = out.add(&LoopElement::from_ring(a, &r, n))?;
        }
        Ok(out)
    }

    /// Human-readable form, e.g. `h⊗1 - 4*omega0`.
    pub fn display_with(&self, alg: &SimpleLieAlgebra) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (a, e, p, c) in self.terms() {
            let mono = match (p, e) {
                (Parity::Even, 0) => "1".to_string(),
                (Parity::Even, 1) => "t".to_string(),
                (Parity::Even, e) => format!("t^{e}"),
                (Parity::Odd, 0) => "u".to_string(),
                (Parity::Odd, 1) => "t*u".to_string(),
                (Parity::Odd, e) => format!("t^{e}*u"),
            };
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, s),
            };
            let text = if body == "1" {
                format!("{}⊗{mono}", alg.label(a))
            } else if c.num_terms() > 1 {
                format!("({body})*{}⊗{mono}", alg.label(a))
            } else {
                format!("{body}*{}⊗{mono}", alg.label(a))
            };
            parts.push((neg, text));
        }
        if !self.central.is_zero() {
            let s = self.central.to_string();
            match s.strip_prefix('-') {
                Some(rest) => parts.push((true, rest.to_string())),
                None => parts.push((false, s)),
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (neg, text)) in parts.iter().enumerate() {
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let _ = write!(out, "{text}");
        }
        out
    }

    /// Serializable view with basis labels and canonical coefficient strings.
    pub fn to_record(&self, alg: &SimpleLieAlgebra) -> LoopRecord {
        LoopRecord {
            terms: self
                .terms()
                .map(|(a, e, p, c)| TermRecord {
                    x: alg.label(a).to_string(),
                    exp: e,
                    parity: p,
                    coefficient: c.to_string(),
                })
                .collect(),
            central: self.central.clone(),
        }
    }
}

fn parse_central(term: &str, n: usize) -> Option<Result<CentralVector>> {
    let (coeff, name) = match term.rsplit_once('*') {
        Some((c, name)) if name.trim().starts_with("omega") => (Some(c.trim()), name.trim()),
        _ if term.starts_with("omega") => (None, term),
        _ => return None,
    };
    let k: usize = match name["omega".len()..].parse() {
        Ok(k) if k <= n => k,
        _ => {
            return Some(Err(Error::IndexOutOfRange(format!(
                "`{name}` is not one of omega0..omega{n}"
            ))))
        }
    };
    let c = match coeff {
        None => ParamPoly::one(),
        Some(src) => match crate::exact::parse::parse_param_poly(src) {
            Ok(c) => c,
            Err(e) => return Some(Err(e.into())),
        },
    };
    Some(Ok(CentralVector::basis(n, k, c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord {
    pub x: String,
    pub exp: i64,
    pub parity: Parity,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopRecord {
    pub terms: Vec<TermRecord>,
    pub central: CentralVector,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g = SimpleLieAlgebra::sl2();
        let spec = CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap();
        let x = LoopElement::parse("e⊗t^2*u; h@(3/2)*t^-1 - b; 2*omega4", &g, &spec).unwrap();
        assert_eq!(
            x.display_with(&g),
            "3/2*h⊗t^-1 - b*h⊗1 + e⊗t^2*u + 2*omega4"
        );
        let y = LoopElement::parse("f⊗u^2", &g, &spec).unwrap();
        assert_eq!(y.even.len(), 3);
        assert_eq!(y.parity(), Some(Parity::Even));
        assert_eq!(x.parity(), None);
        assert!(LoopElement::parse("q⊗t", &g, &spec).is_err());
        assert!(LoopElement::parse("e t", &g, &spec).is_err());
        assert!(LoopElement::parse("omega7", &g, &spec).is_err());
        let err = LoopElement::parse("e⊗t^^2", &g, &spec).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
