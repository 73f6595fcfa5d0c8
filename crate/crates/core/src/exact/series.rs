use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::param_poly::ParamPoly;
use crate::exact::rational::{ratio, Rational};

/// Exponent on the grid `(1/2)Z`, stored as its numerator over 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(i64);

impl Exponent {
    pub const ZERO: Exponent = Exponent(0);

    pub fn int(e: i64) -> Self {
        Exponent(2 * e)
    }

    /// `halves / 2`.
    pub fn halves(halves: i64) -> Self {
        Exponent(halves)
    }

    pub fn as_halves(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// The exponent as an integer, when it is one.
    pub fn as_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> Rational {
        ratio(self.0, 2)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Truncated formal series `sum c_e z^e`, `e` in `(1/2)Z`, known exactly for
/// all exponents below `order` and unknown from `order` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGridSeries {
    coeffs: BTreeMap<Exponent, ParamPoly>,
    order: Exponent,
}

/// One `{exponent, coefficient}` record of the JSON series dump.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesTerm {
    pub exponent: String,
    pub coefficient: String,
}

impl HalfGridSeries {
    pub fn zero(order: Exponent) -> Self {
        HalfGridSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: Exponent) -> Self {
        Self::monomial(Exponent::ZERO, ParamPoly::one(), order)
    }

    pub fn monomial(exp: Exponent, coeff: ParamPoly, order: Exponent) -> Self {
        let mut s = Self::zero(order);
        s.add_term(exp, coeff);
        s
    }

    /// Truncation of an exact polynomial in `z` (given as a Laurent polynomial).
    pub fn from_laurent(p: &LaurentPoly, order: Exponent) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in p.terms() {
            s.add_term(Exponent::int(e), c.clone());
        }
        s
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Exponent, ParamPoly)>,
        order: Exponent,
    ) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, exp: Exponent, coeff: ParamPoly) {
        if exp >= self.order || coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn order(&self) -> Exponent {
        self.order
    }

    pub fn coeff(&self, exp: Exponent) -> ParamPoly {
        assert!(
            exp < self.order,
            "coefficient at {exp} is beyond truncation order {}",
            self.order
        );
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Coefficient of the integral power `z^e`.
    pub fn coeff_int(&self, e: i64) -> ParamPoly {
        self.coeff(Exponent::int(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &ParamPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored exponent, or the order for the zero series.
    pub fn valuation(&self) -> Exponent {
        self.coeffs.keys().next().copied().unwrap_or(self.order)
    }

    pub fn truncate(&self, order: Exponent) -> HalfGridSeries {
        let order = order.min(self.order);
        HalfGridSeries {
            coeffs: self
                .coeffs
                .range(..order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            order,
        }
    }

    /// Multiplication by `z^shift`.
    pub fn shift(&self, shift: Exponent) -> HalfGridSeries {
        HalfGridSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e + shift, c.clone()))
                .collect(),
            order: self.order + shift,
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> HalfGridSeries {
        Self::from_terms(self.coeffs.iter().map(|(e, a)| (*e, a * c)), self.order)
    }

    pub fn scale_rat(&self, c: &Rational) -> HalfGridSeries {
        Self::from_terms(
            self.coeffs.iter().map(|(e, a)| (*e, a.scale(c))),
            self.order,
        )
    }

    /// `z^e -> e z^(e-1)`; the order drops by one.
    pub fn differentiate(&self) -> HalfGridSeries {
        let one = Exponent::int(1);
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(e, c)| (*e - one, c.scale(&e.to_rational()))),
            self.order - one,
        )
    }

    /// `z^e -> z^(e+1)/(e+1)` with integration constant 0.
    pub fn integrate(&self) -> Result<HalfGridSeries> {
        let minus_one = Exponent::int(-1);
        if let Some(c) = self.coeffs.get(&minus_one) {
            return Err(Error::LogTerm(c.to_string()));
        }
        if self.order <= minus_one {
            return Err(Error::LogTerm("unknown (beyond truncation order)".into()));
        }
        let one = Exponent::int(1);
        Ok(Self::from_terms(
            self.coeffs.iter().map(|(e, c)| {
                let next = *e + one;
                (next, c.scale(&next.to_rational().recip()))
            }),
            self.order + one,
        ))
    }

    fn unit_constant_check(&self, err: fn(String) -> Error) -> Result<()> {
        if self.valuation() < Exponent::ZERO {
            return Err(err(format!("negative exponent {}", self.valuation())));
        }
        if self.order <= Exponent::ZERO {
            return Err(err("unknown".into()));
        }
        let c0 = self.coeff(Exponent::ZERO);
        if !c0.is_one() {
            return Err(err(c0.to_string()));
        }
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<HalfGridSeries> {
        self.unit_constant_check(Error::InverseConstantTerm)?;
        // b_0 = 1, b_m = -sum_{0 < j <= m} a_j b_{m-j} on the half grid.
        let top = self.order.as_halves();
        let mut b: Vec<ParamPoly> = Vec::with_capacity(top as usize);
        let tail: Vec<(i64, &ParamPoly)> = self
            .coeffs
            .iter()
            .filter(|(e, _)| e.as_halves() > 0)
            .map(|(e, c)| (e.as_halves(), c))
            .collect();
        for m in 0..top {
            if m == 0 {
                b.push(ParamPoly::one());
                continue;
            }
            let mut acc = ParamPoly::zero();
            for &(j, a) in tail.iter().take_while(|(j, _)| *j <= m) {
                let prev = &b[(m - j) as usize];
                if !prev.is_zero() {
                    acc -= &(a * prev);
                }
            }
            b.push(acc);
        }
        Ok(Self::from_terms(
            b.into_iter()
                .enumerate()
                .map(|(h, c)| (Exponent::halves(h as i64), c)),
            self.order,
        ))
    }

    /// Square root of a series with constant term 1 by Newton iteration
    /// `s <- (s + a/s)/2`, doubling the known precision each round.
    pub fn sqrt_newton(&self) -> Result<HalfGridSeries> {
        self.unit_constant_check(Error::SqrtConstantTerm)?;
        let target = self.order;
        let half = ratio(1, 2);
        let mut prec = Exponent::halves(1).min(target);
        let mut s = HalfGridSeries::one(prec);
        while prec < target {
            prec = Exponent::halves(2 * prec.as_halves()).min(target);
            let s_ext = HalfGridSeries {
                coeffs: s.coeffs.clone(),
                order: prec,
            };
            let quotient = &self.truncate(prec) * &s_ext.inverse()?;
            s = (&s_ext + &quotient).scale_rat(&half).truncate(prec);
        }
        Ok(HalfGridSeries {
            coeffs: s.coeffs,
            order: target,
        })
    }

    /// True when both series agree on every exponent below the smaller order.
    pub fn agrees_with(&self, other: &HalfGridSeries) -> bool {
        let order = self.order.min(other.order);
        self.coeffs.range(..order).eq(other.coeffs.range(..order))
    }

    pub fn eval_params(&self, point: &BTreeMap<String, Rational>) -> HalfGridSeries {
        Self::from_terms(
            self.coeffs.iter().map(|(e, c)| (*e, c.eval_partial(point))),
            self.order,
        )
    }

    pub fn to_records(&self) -> Vec<SeriesTerm> {
        self.coeffs
            .iter()
            .map(|(e, c)| SeriesTerm {
                exponent: e.to_string(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for HalfGridSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *e == Exponent::ZERO {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*z^{e}")?;
            }
        }
        if !self.coeffs.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O(z^{})", self.order)
    }
}

impl<'a> Add<&'a HalfGridSeries> for &HalfGridSeries {
    type Output = HalfGridSeries;
    fn add(self, rhs: &'a HalfGridSeries) -> HalfGridSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (e, c) in rhs.coeffs.range(..order) {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a HalfGridSeries> for &HalfGridSeries {
    type Output = HalfGridSeries;
    fn sub(self, rhs: &'a HalfGridSeries) -> HalfGridSeries {
        self + &(-rhs)
    }
}

impl Neg for &HalfGridSeries {
    type Output = HalfGridSeries;
    fn neg(self) -> HalfGridSeries {
        HalfGridSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
        }
    }
}

impl<'a> Mul<&'a HalfGridSeries> for &HalfGridSeries {
    type Output = HalfGridSeries;
    fn mul(self, rhs: &'a HalfGridSeries) -> HalfGridSeries {
        let order = (self.order + rhs.valuation()).min(rhs.order + self.valuation());
        let mut acc: BTreeMap<Exponent, ParamPoly> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let e = *e1 + *e2;
                if e >= order {
                    break;
                }
                *acc.entry(e).or_default() += &(c1 * c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        HalfGridSeries { coeffs: acc, order }
    }
}

impl Mul for HalfGridSeries {
    type Output = HalfGridSeries;
    fn mul(self, rhs: HalfGridSeries) -> HalfGridSeries {
        &self * &rhs
    }
}
