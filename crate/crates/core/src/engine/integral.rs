//! Closed-form route to the generating series through integrating factors.
//!
//! `P_i = z^((n-2)/2) sqrt(Pbar) (C + int R_i / (2 z^(n/2) Pbar^(3/2)) dz)`
//! and, with `Ptil = P / a_0`,
//! `Q_i = z^(n+1) sqrt(Ptil) (C + int S_i / (2 a_0 z^(n+2) Ptil^(3/2)) dz)`.
//!
//! The Taylor series of `sqrt`, `x^(-3/2)` and `x^(-1/2)` composed with the
//! curve polynomials come from Faa di Bruno. The integration constant `C` is
//! the `z^0` coefficient of `mu * (initial part of the series)`, where `mu`
//! is the integrating factor; it vanishes in most cases but not all (for
//! instance the `z^(n+1)` term of `Q_{-1}`).

use crate::engine::bell::{
    faa_series, neg_half_deriv, neg_three_halves_deriv, pbar_taylor, sqrt_deriv,
};
use crate::engine::ode::{r_poly, s_poly};
use crate::engine::tables::CoeffTables;
use crate::error::{Error, Result};
use crate::exact::{Exponent, HalfGridSeries, LaurentPoly, ParamPoly, Rational};

struct Expansions {
    sqrt: HalfGridSeries,
    neg_three_halves: HalfGridSeries,
    neg_half: HalfGridSeries,
}

fn expand(inner: &[ParamPoly], order: usize) -> Expansions {
    Expansions {
        sqrt: faa_series(sqrt_deriv, inner, order),
        neg_three_halves: faa_series(neg_three_halves_deriv, inner, order),
        neg_half: faa_series(neg_half_deriv, inner, order),
    }
}

/// Shared assembly: `prefactor_shift` is the power of `z` in front,
/// `integrand_shift` the power of `z` in the integrand denominator (negated),
/// `numerator` the polynomial over `2 * scale`.
fn assemble(
    ex: &Expansions,
    numerator: &LaurentPoly,
    scale: &Rational,
    prefactor_shift: Exponent,
    integrand_shift: Exponent,
    initial: &LaurentPoly,
    order: i64,
) -> Result<HalfGridSeries> {
    let target = Exponent::int(order);
    let big = Exponent::int(order + 4 * (numerator.max_exp().unwrap_or(0) + 4));
    let num = HalfGridSeries::from_laurent(numerator, big)
        .scale_rat(&(Rational::from_integer(2.into()) * scale).recip());
    let integrand = &num.shift(integrand_shift) * &ex.neg_three_halves;
    let mut integral = integrand.integrate()?;

    let mu = ex.neg_half.shift(Exponent::ZERO - prefactor_shift);
    let init = &mu * &HalfGridSeries::from_laurent(initial, big);
    if Exponent::ZERO < init.order() {
        let c = init.coeff(Exponent::ZERO);
        if !c.is_zero() {
            integral = &integral + &HalfGridSeries::monomial(Exponent::ZERO, c, integral.order());
        }
    } else {
        return Err(Error::Oracle(
            "integration constant beyond truncation order".into(),
        ));
    }

    let out = &ex.sqrt.shift(prefactor_shift) * &integral;
    if out.order() < target {
        return Err(Error::Oracle(format!(
            "integral route reached order {} below the requested {}",
            out.order(),
            target
        )));
    }
    Ok(out.truncate(target))
}

/// `P_i(z)` through the integrating factor `1/(z^((n-2)/2) sqrt(Pbar))`.
pub fn integral_p_series(i: i64, order: i64, tables: &CoeffTables) -> Result<HalfGridSeries> {
    let spec = tables.spec();
    let n = spec.degree() as i64;
    let r = r_poly(i, tables)?;
    let ex = expand(&pbar_taylor(spec), (order + n + 2).max(1) as usize);
    assemble(
        &ex,
        &r,
        &Rational::from_integer(1.into()),
        Exponent::halves(n - 2),
        Exponent::halves(-n),
        &LaurentPoly::t_pow(n + i),
        order,
    )
}

/// `Q_i(z)` through the integrating factor `1/(z^(n+1) sqrt(P))`.
pub fn integral_q_series(i: i64, order: i64, tables: &CoeffTables) -> Result<HalfGridSeries> {
    let spec = tables.spec();
    let a0 = tables.q()?.a0().clone();
    let n = spec.degree() as i64;
    let s = s_poly(i, tables)?;
    let inner: Vec<ParamPoly> = spec.coeffs().iter().map(|c| c.scale(&a0.recip())).collect();
    let ex = expand(&inner, (order + 2).max(1) as usize);
    assemble(
        &ex,
        &s,
        &a0,
        Exponent::int(n + 1),
        Exponent::int(-(n + 2)),
        &LaurentPoly::t_pow(n - i),
        order,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::exact::parse::parse_param_poly;

    #[test]
    fn hexic_p_minus_one() {
        let tables = CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap());
        let s = integral_p_series(-1, 24, &tables).unwrap();
        assert_eq!(s.coeff_int(5), ParamPoly::one());
        assert_eq!(s.coeff_int(8), parse_param_poly("b/2").unwrap());
        assert_eq!(
            s.coeff_int(23),
            parse_param_poly("1/16*b^2*(33*b^4 - 30*b^2 + 5)").unwrap()
        );
    }

    #[test]
    fn routes_agree_everywhere() {
        for curve in [
            "t^6 - 2*b*t^3 + 1",
            "t^4 - 2*c*t^2 + 1",
            "t^5 - 3*t^2 + 2",
            "t^3 - 2*b*t^2 + 1",
        ] {
            let spec = CurveSpec::parse(curve).unwrap();
            let tables = CoeffTables::new(&spec);
            let n = spec.degree() as i64;
            let order = 4 * n + 8;
            for i in -n..=-1 {
                let integral = integral_p_series(i, order, &tables).unwrap();
                let recursion = tables.p.series(i, order).unwrap();
                assert_eq!(integral, recursion, "P route mismatch for {curve}, i={i}");
                let integral = integral_q_series(i, order, &tables).unwrap();
                let recursion = tables.q().unwrap().series(i, order).unwrap();
                assert_eq!(integral, recursion, "Q route mismatch for {curve}, i={i}");
            }
        }
    }

    #[test]
    fn q_constant_of_integration() {
        let tables = CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap());
        let s = integral_q_series(-1, 14, &tables).unwrap();
        assert_eq!(s.coeff_int(7), ParamPoly::one());
        assert_eq!(s.coeff_int(13), parse_param_poly("1/2").unwrap());
    }
}
