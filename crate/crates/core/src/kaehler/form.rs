//! 1-forms `f dg` on `R` and their normalization to `a(t) dt + b(t) u dt`.

use std::fmt;

use crate::curve::{CurveSpec, RingElement};
use crate::error::{Error, Result};
use crate::exact::parse::ParseError;
use crate::exact::{rat, ratio, LaurentPoly};

/// The 1-form `f dg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub f: RingElement,
    pub g: RingElement,
}

impl OneForm {
    pub fn new(f: RingElement, g: RingElement) -> Self {
        OneForm { f, g }
    }

    /// `t^e dt`.
    pub fn t_dt(e: i64) -> Self {
        OneForm::new(RingElement::t_pow(e), RingElement::t_pow(1))
    }

    /// `t^e u dt`.
    pub fn t_u_dt(e: i64) -> Self {
        OneForm::new(RingElement::t_pow_u(e), RingElement::t_pow(1))
    }

    /// Parses `EXPR dt`, `EXPR du` or `EXPR d(EXPR)`, e.g. `t^3*u dt`,
    /// `t^-1 dt`, `t^2*u d(t^-1*u)`. A missing coefficient means 1.
    pub fn parse(input: &str, spec: &CurveSpec) -> Result<Self> {
        let trimmed = input.trim_end();
        let (coeff_end, g_src) = if let Some(rest) = trimmed.strip_suffix(')') {
            let open = matching_open(rest).ok_or_else(|| {
                ParseError::new(
                    input,
                    trimmed.len() - 1,
                    "unbalanced parenthesis in differential",
                )
            })?;
            if open == 0 || !rest[..open].ends_with('d') {
                return Err(ParseError::new(
                    input,
                    open,
                    "expected `d(` before the differentiated expression",
                )
                .into());
            }
            (open - 1, &rest[open + 1..])
        } else if trimmed.ends_with("dt") || trimmed.ends_with("du") {
            let at = trimmed.len() - 2;
            (at, &trimmed[at + 1..])
        } else {
            return Err(ParseError::new(
                input,
                trimmed.len(),
                "expected a differential `dt`, `du` or `d(...)`",
            )
            .into());
        };
        if coeff_end > 0 {
            let before = trimmed[..coeff_end].chars().last().unwrap();
            if before.is_alphanumeric() || before == '_' {
                return Err(ParseError::new(
                    input,
                    coeff_end,
                    "differential must be separated from its coefficient",
                )
                .into());
            }
        }
        let coeff_src = trimmed[..coeff_end].trim().trim_end_matches('*').trim();
        let f = if coeff_src.is_empty() {
            RingElement::one()
        } else {
            RingElement::parse(coeff_src, spec)?
        };
        let g = RingElement::parse(g_src, spec)?;
        Ok(OneForm { f, g })
    }
}

fn matching_open(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (idx, ch) in s.char_indices().rev() {
        match ch {
            ')' => depth += 1,
            '(' => {
                depth -= 1;
                if depth == 0 {
                    return Some(idx);
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) d({})", self.f, self.g)
    }
}

/// A form `dt_part(t) dt + udt_part(t) u dt`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub dt: LaurentPoly,
    pub udt: LaurentPoly,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.dt.is_zero() && self.udt.is_zero()
    }

    /// Smallest and largest exponent occurring in either part.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let mins = [self.dt.min_exp(), self.udt.min_exp()];
        let maxs = [self.dt.max_exp(), self.udt.max_exp()];
        Some((
            mins.into_iter().flatten().min()?,
            maxs.into_iter().flatten().max()?,
        ))
    }
}

/// Splits `h = q p + r` with `r` supported on `t^0..t^(n-1)`, using `a_n = 1`
/// to lower high powers and `a_0` to raise negative ones. `a_0` must be a
/// nonzero rational.
pub fn laurent_divmod(h: &LaurentPoly, spec: &CurveSpec) -> Result<(LaurentPoly, LaurentPoly)> {
    let n = spec.degree() as i64;
    let a0 = spec
        .numeric_a0()
        .ok_or_else(|| Error::SymbolicA0(spec.coeff(0).to_string()))?;
    let a0_inv = a0.recip();
    let p = spec.p();
    let mut q = LaurentPoly::zero();
    let mut r = h.clone();
    while let Some(lo) = r.min_exp().filter(|&e| e < 0) {
        let c = r.coeff(lo).scale(&a0_inv);
        r = &r - &p.shift(lo).scale(&c);
        q.add_term(lo, c);
    }
    while let Some(hi) = r.max_exp().filter(|&e| e >= n) {
        let c = r.coeff(hi);
        r = &r - &p.shift(hi - n).scale(&c);
        q.add_term(hi - n, c);
    }
    Ok((q, r))
}

/// Rewrites `f dg` as `a(t) dt + b(t) u dt` modulo exact forms, using
/// `u du = p'/2 dt`, `p du = p'/2 u dt` and `t^m du = d(t^m u) - m t^(m-1) u dt`.
pub fn normalize(form: &OneForm, spec: &CurveSpec) -> Result<NormalForm> {
    let p = spec.p();
    let half_dp = p.derivative().scale_rat(&ratio(1, 2));
    let (f0, f1) = (&form.f.even, &form.f.odd);
    let (g0, g1) = (&form.g.even, &form.g.odd);
    let dg0 = g0.derivative();
    let dg1 = g1.derivative();

    // (f0 + f1 u)(dg0 dt + dg1 u dt + g1 du)
    let mut dt = &(f0 * &dg0) + &(&(f1 * &dg1) * &p);
    let mut udt = &(f0 * &dg1) + &(f1 * &dg0);
    // f1 g1 u du = f1 g1 p'/2 dt
    dt = &dt + &(&(f1 * g1) * &half_dp);
    // f0 g1 du: divide by p, the quotient part turns into u dt
    let (q, r) = laurent_divmod(&(f0 * g1), spec)?;
    udt = &udt + &(&q * &half_dp);
    for (m, c) in r.terms() {
        if m != 0 {
            udt.add_term(m - 1, c.scale(&rat(-m)));
        }
    }
    Ok(NormalForm { dt, udt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ParamPoly;

    fn hexic() -> CurveSpec {
        CurveSpec::parse("t^6 - 3*t^3 + 1").unwrap()
    }

    #[test]
    fn parse_forms() {
        let spec = hexic();
        assert_eq!(
            OneForm::parse("t^3*u dt", &spec).unwrap(),
            OneForm::t_u_dt(3)
        );
        assert_eq!(OneForm::parse("t^-1 dt", &spec).unwrap(), OneForm::t_dt(-1));
        assert_eq!(OneForm::parse("dt", &spec).unwrap(), OneForm::t_dt(0));
        let f = OneForm::parse("t^2*u d(t^-1*u)", &spec).unwrap();
        assert_eq!(f.f, RingElement::t_pow_u(2));
        assert_eq!(f.g, RingElement::t_pow_u(-1));
        let f = OneForm::parse("(t + u) du", &spec).unwrap();
        assert_eq!(f.g, RingElement::t_pow_u(0));
        assert!(OneForm::parse("t^3*u", &spec).is_err());
        assert!(OneForm::parse("t^3*udt", &spec).is_err());
    }

    #[test]
    fn divmod_reconstructs() {
        let spec = hexic();
        let h = crate::exact::parse::parse_laurent("t^-4 + 5*t^9 - t^2").unwrap();
        let (q, r) = laurent_divmod(&h, &spec).unwrap();
        assert_eq!(&(&q * &spec.p()) + &r, h);
        assert!(r.min_exp().unwrap() >= 0 && r.max_exp().unwrap() < 6);
    }

    #[test]
    fn normalize_basic_forms() {
        let spec = hexic();
        let nf = normalize(&OneForm::t_u_dt(2), &spec).unwrap();
        assert_eq!(nf.udt, LaurentPoly::t_pow(2));
        assert!(nf.dt.is_zero());
        // u du = p'/2 dt
        let nf = normalize(&OneForm::parse("u du", &spec).unwrap(), &spec).unwrap();
        assert_eq!(
            nf.dt,
            spec.p().derivative().scale_rat(&crate::exact::ratio(1, 2))
        );
        // t^2 du = d(t^2 u) - 2 t u dt
        let nf = normalize(&OneForm::parse("t^2 du", &spec).unwrap(), &spec).unwrap();
        assert_eq!(nf.udt, LaurentPoly::monomial(1, ParamPoly::int(-2)));
    }
}
