//! Checks specific to the quartic curve `t^4 - 2c t^2 + 1`, whose `P_{-4}`
//! family satisfies a fourth-order ODE in the parameter `c`.

use crate::curve::CurveSpec;
use crate::engine::tables::PCoeffTable;
use crate::error::{Error, Result};
use crate::exact::{rat, ParamPoly};

/// Name of the parameter `c` when `spec` is `t^4 - 2c t^2 + 1`.
pub fn quartic_parameter(spec: &CurveSpec) -> Result<String> {
    let bad = |why: &str| Error::NotQuartic(format!("{spec}: {why}"));
    if spec.degree() != 4 {
        return Err(bad("degree is not 4"));
    }
    if !spec.coeff(0).is_one() || !spec.coeff(1).is_zero() || !spec.coeff(3).is_zero() {
        return Err(bad("expected a0 = 1 and a1 = a3 = 0"));
    }
    let half = spec.coeff(2).scale(&crate::exact::ratio(-1, 2));
    let params = half.params();
    match params.iter().next() {
        Some(name) if params.len() == 1 && half == ParamPoly::var(name) => Ok(name.clone()),
        _ => Err(bad("t^2 coefficient must be -2 times a single parameter")),
    }
}

/// Coefficient of `z^m` in `P_{-4}(c, z)`.
pub fn quartic_series_coeff(m: i64, table: &PCoeffTable) -> Result<ParamPoly> {
    if m < 0 {
        return Ok(ParamPoly::zero());
    }
    table.get(m - 4, -4)
}

/// Left-hand side of
/// `16(c^2-1)^2 P'''' + 160c(c^2-1) P''' - 8(c^2(m^2-4m-46) - m^2+4m+22) P''
///  - 24c(m^2-4m-6) P' + (m-4)^2 m^2 P`
/// for `P = P_m(c)`; zero for every `m`.
pub fn quartic_ode_residual(m: i64, table: &PCoeffTable) -> Result<ParamPoly> {
    let c_name = quartic_parameter(table.spec())?;
    let c = ParamPoly::var(&c_name);
    let p0 = quartic_series_coeff(m, table)?;
    let p1 = p0.derivative(&c_name);
    let p2 = p1.derivative(&c_name);
    let p3 = p2.derivative(&c_name);
    let p4 = p3.derivative(&c_name);
    let c2_minus_1 = &c.pow(2) - &ParamPoly::one();
    let k = |v: i64| ParamPoly::int(v);

    let t4 = &(&k(16) * &c2_minus_1.pow(2)) * &p4;
    let t3 = &(&(&k(160) * &c) * &c2_minus_1) * &p3;
    let second = &(&c.pow(2) * &k(m * m - 4 * m - 46)) + &k(-m * m + 4 * m + 22);
    let t2 = &(&k(-8) * &second) * &p2;
    let t1 = &(&(&k(-24) * &c) * &k(m * m - 4 * m - 6)) * &p1;
    let t0 = &k((m - 4) * (m - 4) * m * m) * &p0;
    Ok([t4, t3, t2, t1, t0].into_iter().sum())
}

/// Checks `(6+2k) P_{k+4} = 4kc P_{k+2} - 2(k-3) P_k` in series indexing
/// against the general table.
pub fn quartic_recursion_check(k: i64, table: &PCoeffTable) -> Result<bool> {
    let c_name = quartic_parameter(table.spec())?;
    let c = ParamPoly::var(&c_name);
    let lhs = quartic_series_coeff(k + 4, table)?.scale(&rat(6 + 2 * k));
    let rhs = &(&quartic_series_coeff(k + 2, table)? * &c).scale(&rat(4 * k))
        - &quartic_series_coeff(k, table)?.scale(&rat(2 * (k - 3)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_param_poly;

    fn table() -> PCoeffTable {
        PCoeffTable::new(&CurveSpec::parse("t^4 - 2*c*t^2 + 1").unwrap())
    }

    #[test]
    fn recursion_instances() {
        let t = table();
        assert_eq!(quartic_series_coeff(4, &t).unwrap(), ParamPoly::one());
        assert_eq!(
            quartic_series_coeff(6, &t).unwrap(),
            parse_param_poly("4*c/5").unwrap()
        );
        assert_eq!(
            quartic_series_coeff(8, &t).unwrap(),
            parse_param_poly("(32*c^2-5)/35").unwrap()
        );
        for k in 0..30 {
            assert!(quartic_recursion_check(k, &t).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn fourth_order_residual_vanishes() {
        let t = table();
        for m in [0, 8, 12, 21, 30] {
            assert!(quartic_ode_residual(m, &t).unwrap().is_zero(), "m = {m}");
        }
    }

    #[test]
    fn non_quartic_rejected() {
        let t = PCoeffTable::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap());
        assert!(matches!(
            quartic_ode_residual(4, &t),
            Err(Error::NotQuartic(_))
        ));
        let t = PCoeffTable::new(&CurveSpec::parse("t^4 - 2*c*t^2 + t + 1").unwrap());
        assert!(quartic_parameter(t.spec()).is_err());
    }
}
