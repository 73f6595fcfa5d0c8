use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::param_poly::ParamPoly;
use crate::exact::rational::{rat, Rational};

/// Finitely supported Laurent polynomial `sum c_e t^e` with `ParamPoly`
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, ParamPoly>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, ParamPoly::one())
    }

    pub fn monomial(exp: i64, coeff: ParamPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `t^exp` with coefficient 1.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(exp, ParamPoly::one())
    }

    /// Builds `sum coeffs[k] t^k`.
    pub fn from_coeffs(coeffs: &[ParamPoly]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: ParamPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> ParamPoly {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, exp: i64) -> Option<&ParamPoly> {
        self.terms.get(&exp)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &ParamPoly)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &ParamPoly) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a.scale(c));
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// d/dt.
    pub fn derivative(&self) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e - 1, c.scale(&rat(*e)));
        }
        out
    }

    pub fn eval_params(&self, point: &BTreeMap<String, Rational>) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.eval_partial(point));
        }
        out
    }

    /// Writes the polynomial using `var` as the variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut body = if *e == 0 {
                c.to_string()
            } else {
                let power = if *e == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{e}")
                };
                if c.is_one() {
                    power
                } else if c.as_constant().is_some_and(|k| k == rat(-1)) {
                    format!("-{power}")
                } else if c.num_terms() == 1 {
                    format!("{c}*{power}")
                } else {
                    format!("({c})*{power}")
                }
            };
            if idx > 0 {
                if let Some(stripped) = body.strip_prefix('-') {
                    out.push_str(" - ");
                    body = stripped.to_string();
                } else {
                    out.push_str(" + ");
                }
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_with_negative_exponents() {
        let t = LaurentPoly::t_pow(1);
        let tinv = LaurentPoly::t_pow(-1);
        assert_eq!(&t * &tinv, LaurentPoly::one());
        let p = &LaurentPoly::t_pow(2) - &LaurentPoly::one();
        let q = &LaurentPoly::t_pow(2) + &LaurentPoly::one();
        assert_eq!(&p * &q, &LaurentPoly::t_pow(4) - &LaurentPoly::one());
    }

    #[test]
    fn derivative_and_display() {
        let b = ParamPoly::var("b");
        let p = &(&LaurentPoly::t_pow(6) - &LaurentPoly::monomial(3, b.scale(&rat(2))))
            + &LaurentPoly::one();
        assert_eq!(p.to_string(), "t^6 - 2*b*t^3 + 1");
        assert_eq!(p.derivative().to_string(), "6*t^5 - 6*b*t^2");
        let q = LaurentPoly::monomial(-2, ParamPoly::var("b") + ParamPoly::one());
        assert_eq!(q.to_string(), "(b + 1)*t^-2");
    }
}
