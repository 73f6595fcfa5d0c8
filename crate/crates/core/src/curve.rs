//! The coordinate ring `R = C[t, t^-1, u | u^2 = p(t)]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::parse::{parse_expr, parse_laurent};
use crate::exact::{LaurentPoly, ParamPoly, Rational};

/// `p(t) = t^n + a_{n-1} t^{n-1} + ... + a_0` with `a_0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    coeffs: Vec<ParamPoly>,
}

impl CurveSpec {
    /// Builds a spec from `a_0, ..., a_n` without validation.
    pub fn from_coeffs_unchecked(coeffs: Vec<ParamPoly>) -> Self {
        CurveSpec { coeffs }
    }

    pub fn new(coeffs: Vec<ParamPoly>) -> Result<Self> {
        curve_validate(Self::from_coeffs_unchecked(coeffs))
    }

    /// Parses and validates `p(t)`, e.g. `t^6 - 2*b*t^3 + 1`.
    pub fn parse(input: &str) -> Result<Self> {
        let p = parse_laurent(input)?;
        if p.is_zero() {
            return Err(Error::InvalidCurve("p(t) is zero".into()));
        }
        if p.min_exp().unwrap() < 0 {
            return Err(Error::InvalidCurve(
                "p(t) must be a polynomial (no negative powers of t)".into(),
            ));
        }
        let n = p.max_exp().unwrap();
        Self::new((0..=n).map(|k| p.coeff(k)).collect())
    }

    /// Degree `n` of `p`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `a_j`, zero outside `0..=n`.
    pub fn coeff(&self, j: i64) -> ParamPoly {
        if j < 0 {
            return ParamPoly::zero();
        }
        self.coeffs.get(j as usize).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.coeffs.iter().flat_map(ParamPoly::params).collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    /// `a_0` when it is a rational constant.
    pub fn numeric_a0(&self) -> Option<Rational> {
        self.coeffs.first().and_then(ParamPoly::as_constant)
    }

    /// `p(t)` as a Laurent polynomial.
    pub fn p(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(&self.coeffs)
    }

    /// Substitutes parameter values into every coefficient.
    pub fn instantiate(&self, point: &BTreeMap<String, Rational>) -> CurveSpec {
        CurveSpec {
            coeffs: self.coeffs.iter().map(|c| c.eval_partial(point)).collect(),
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.p().to_string())
    }
}

/// Accepts the spec when `a_n = 1`, `a_0 != 0` and, for fully numeric
/// coefficients, `p` is separable. Separability of symbolic `p` is left to
/// the caller.
pub fn curve_validate(spec: CurveSpec) -> Result<CurveSpec> {
    let n = spec.degree();
    if spec.coeffs.is_empty() || n == 0 {
        return Err(Error::InvalidCurve(
            "p(t) must have degree at least 1".into(),
        ));
    }
    if !spec.coeffs[n].is_one() {
        return Err(Error::InvalidCurve(format!(
            "leading coefficient must be 1, found {}",
            spec.coeffs[n]
        )));
    }
    if spec.coeffs[0].is_zero() {
        return Err(Error::InvalidCurve(
            "constant term a0 must be nonzero".into(),
        ));
    }
    if spec.is_numeric() {
        let p: Vec<Rational> = spec
            .coeffs
            .iter()
            .map(|c| c.as_constant().unwrap())
            .collect();
        let dp: Vec<Rational> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        let g = uni_gcd(p, dp);
        if g.len() > 1 {
            return Err(Error::InvalidCurve(format!(
                "p(t) has repeated roots (gcd(p, p') has degree {})",
                g.len() - 1
            )));
        }
    }
    Ok(spec)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn uni_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let lead = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let q = a.last().unwrap() / &lead;
        let shift = a.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            a[shift + k] -= &q * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// Monic gcd over the rationals, dense coefficients lowest degree first.
fn uni_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = uni_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

/// `even + odd * u` in `R`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    pub even: LaurentPoly,
    pub odd: LaurentPoly,
}

impl RingElement {
    pub fn new(even: LaurentPoly, odd: LaurentPoly) -> Self {
        RingElement { even, odd }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::even(LaurentPoly::one())
    }

    pub fn even(p: LaurentPoly) -> Self {
        RingElement {
            even: p,
            odd: LaurentPoly::zero(),
        }
    }

    pub fn odd(p: LaurentPoly) -> Self {
        RingElement {
            even: LaurentPoly::zero(),
            odd: p,
        }
    }

    /// `t^i`.
    pub fn t_pow(i: i64) -> Self {
        Self::even(LaurentPoly::t_pow(i))
    }

    /// `t^i u`.
    pub fn t_pow_u(i: i64) -> Self {
        Self::odd(LaurentPoly::t_pow(i))
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, c: &ParamPoly) -> RingElement {
        RingElement {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }

    /// Parses e.g. `(3/2)*t^-2 + b*t^3*u`, reducing `u^2 = p(t)`.
    pub fn parse(input: &str, spec: &CurveSpec) -> Result<Self> {
        let e = parse_expr(input)?;
        let p = spec.p();
        let mut out = RingElement::zero();
        for (t, u, c) in e.terms() {
            let mut piece = LaurentPoly::monomial(t, c.clone());
            for _ in 0..u / 2 {
                piece = &piece * &p;
            }
            if u % 2 == 0 {
                out.even = &out.even + &piece;
            } else {
                out.odd = &out.odd + &piece;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "({})*u", self.odd),
            (false, false) => write!(f, "{} + ({})*u", self.even, self.odd),
        }
    }
}

impl<'a> Add<&'a RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &'a RingElement) -> RingElement {
        RingElement {
            even: &self.even + &rhs.even,
            odd: &self.odd + &rhs.odd,
        }
    }
}

impl<'a> Sub<&'a RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &'a RingElement) -> RingElement {
        RingElement {
            even: &self.even - &rhs.even,
            odd: &self.odd - &rhs.odd,
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            even: -&self.even,
            odd: -&self.odd,
        }
    }
}

/// `(f1 + g1 u)(f2 + g2 u) = (f1 f2 + g1 g2 p) + (f1 g2 + f2 g1) u`.
pub fn ring_mul(x: &RingElement, y: &RingElement, spec: &CurveSpec) -> RingElement {
    let odd_odd = &(&x.odd * &y.odd) * &spec.p();
    RingElement {
        even: &(&x.even * &y.even) + &odd_odd,
        odd: &(&x.even * &y.odd) + &(&x.odd * &y.even),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One weighted term `weight * t^i [u] d(t^j [u])` of the expansion of `f dg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPair {
    pub weight: ParamPoly,
    pub i: i64,
    pub left: Parity,
    pub j: i64,
    pub right: Parity,
}

/// Expands `f dg` bilinearly into monomial pairs.
pub fn ring_derivative_pairing(f: &RingElement, g: &RingElement) -> Vec<MonomialPair> {
    let parts = |r: &RingElement| -> Vec<(Parity, i64, ParamPoly)> {
        let mut v: Vec<_> = r
            .even
            .terms()
            .map(|(e, c)| (Parity::Even, e, c.clone()))
            .collect();
        v.extend(r.odd.terms().map(|(e, c)| (Parity::Odd, e, c.clone())));
        v
    };
    let (lhs, rhs) = (parts(f), parts(g));
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for (lp, i, ci) in &lhs {
        for (rp, j, cj) in &rhs {
            out.push(MonomialPair {
                weight: ci * cj,
                i: *i,
                left: *lp,
                j: *j,
                right: *rp,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn hexic() -> CurveSpec {
        CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap()
    }

    #[test]
    fn validation() {
        assert!(CurveSpec::parse("t^4 - 2*c*t^2 + 1").is_ok());
        let repeated = CurveSpec::parse("t^2 - 2*t + 1").unwrap_err();
        assert!(matches!(repeated, Error::InvalidCurve(ref m) if m.contains("repeated")));
        assert!(matches!(
            CurveSpec::parse("t^3"),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            CurveSpec::parse("2*t^3 + 1"),
            Err(Error::InvalidCurve(_))
        ));
        assert!(CurveSpec::parse("t^2 - 3*t + 2").is_ok());
        assert!(CurveSpec::parse("t^-1 + 1").is_err());
    }

    #[test]
    fn u_squared_is_p() {
        let spec = hexic();
        let u = RingElement::t_pow_u(0);
        assert_eq!(ring_mul(&u, &u, &spec), RingElement::even(spec.p()));
        let tu = RingElement::t_pow_u(1);
        assert_eq!(ring_mul(&tu, &RingElement::t_pow(-1), &spec), u);
        let t3u = RingElement::t_pow_u(3);
        let expected = RingElement::parse("t^9 - 2*b*t^6 + t^3", &spec).unwrap();
        assert_eq!(ring_mul(&u, &t3u, &spec), expected);
    }

    #[test]
    fn parse_reduces_u_powers() {
        let spec = hexic();
        let e = RingElement::parse("(3/2)*t^-2 + b*t^3*u", &spec).unwrap();
        assert_eq!(e.odd, LaurentPoly::monomial(3, ParamPoly::var("b")));
        assert_eq!(
            RingElement::parse("u^2", &spec).unwrap(),
            RingElement::even(spec.p())
        );
        assert_eq!(
            RingElement::parse("u^3", &spec).unwrap(),
            RingElement::odd(spec.p())
        );
    }

    #[test]
    fn pairing_expansion() {
        let pairs = ring_derivative_pairing(&RingElement::t_pow(2), &RingElement::t_pow(-2));
        assert_eq!(
            pairs,
            vec![MonomialPair {
                weight: ParamPoly::one(),
                i: 2,
                left: Parity::Even,
                j: -2,
                right: Parity::Even
            }]
        );
        let pairs = ring_derivative_pairing(&RingElement::t_pow_u(0), &RingElement::t_pow(3));
        assert_eq!(
            (pairs[0].i, pairs[0].left, pairs[0].j, pairs[0].right),
            (0, Parity::Odd, 3, Parity::Even)
        );
        let spec = hexic();
        let f = RingElement::parse("t + u", &spec).unwrap();
        let g = RingElement::parse("t - u", &spec).unwrap();
        let pairs = ring_derivative_pairing(&f, &g);
        assert_eq!(pairs.len(), 4);
        let minus = pairs
            .iter()
            .filter(|p| p.weight == ParamPoly::constant(rat(-1)))
            .count();
        assert_eq!(minus, 2);
    }
}
