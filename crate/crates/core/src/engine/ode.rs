//! First-order ODE data for the generating series and their residuals.
//!
//! With `Pbar(z) = sum a_j z^(n-j)` and `Q_even = z Pbar' + (n-2) Pbar` the
//! P-family satisfies `2 z Pbar P_i' - Q_even P_i = R_i`; with
//! `P(z) = sum a_j z^j` and `Q_odd = z P' + 2(n+1) P` the Q-family satisfies
//! `2 z P Q_i' - Q_odd Q_i = S_i`.

use crate::curve::CurveSpec;
use crate::engine::tables::CoeffTables;
use crate::error::Result;
use crate::exact::{rat, Exponent, HalfGridSeries, LaurentPoly, ParamPoly};

/// The polynomials entering both ODEs for a fixed index `i`, all in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeData {
    pub i: i64,
    pub pbar: LaurentPoly,
    pub p: LaurentPoly,
    pub q_even: LaurentPoly,
    pub q_odd: LaurentPoly,
    pub r: LaurentPoly,
    /// `S_i`; absent when `a_0` is symbolic.
    pub s: Option<LaurentPoly>,
}

pub fn pbar_poly(spec: &CurveSpec) -> LaurentPoly {
    let n = spec.degree() as i64;
    let mut out = LaurentPoly::zero();
    for j in 0..=n {
        out.add_term(n - j, spec.coeff(j));
    }
    out
}

/// `R_i(z) = sum_j sum_{-j <= k < 0} (3j+2k-2n+2) a_j P_{k-n+j,i} z^(n+k)`.
pub fn r_poly(i: i64, tables: &CoeffTables) -> Result<LaurentPoly> {
    let spec = tables.spec();
    let n = spec.degree() as i64;
    let mut out = LaurentPoly::zero();
    for j in 0..=n {
        let a = spec.coeff(j);
        if a.is_zero() {
            continue;
        }
        for k in -j..0 {
            let weight = 3 * j + 2 * k - 2 * n + 2;
            let p = tables.p_coeff(k - n + j, i)?;
            out.add_term(n + k, (&a * &p).scale(&rat(weight)));
        }
    }
    Ok(out)
}

/// `S_i(z) = -sum_{m=1}^n sum_{j<m} (3j-2m+2) a_j Q_{m-j,i} z^(m+n)`.
pub fn s_poly(i: i64, tables: &CoeffTables) -> Result<LaurentPoly> {
    let spec = tables.spec();
    let n = spec.degree() as i64;
    let mut out = LaurentPoly::zero();
    for m in 1..=n {
        let mut acc = ParamPoly::zero();
        for j in 0..m {
            let weight = 3 * j - 2 * m + 2;
            let q = tables.q_coeff(m - j, i)?;
            acc -= &(&spec.coeff(j) * &q).scale(&rat(weight));
        }
        out.add_term(m + n, acc);
    }
    Ok(out)
}

pub fn build_ode_data(i: i64, tables: &CoeffTables) -> Result<OdeData> {
    let spec = tables.spec();
    let n = spec.degree() as i64;
    let z = LaurentPoly::t_pow(1);
    let pbar = pbar_poly(spec);
    let p = spec.p();
    let q_even = &(&z * &pbar.derivative()) + &pbar.scale_rat(&rat(n - 2));
    let q_odd = &(&z * &p.derivative()) + &p.scale_rat(&rat(2 * (n + 1)));
    let r = r_poly(i, tables)?;
    let s = match tables.q() {
        Ok(_) => Some(s_poly(i, tables)?),
        Err(_) => None,
    };
    Ok(OdeData {
        i,
        pbar,
        p,
        q_even,
        q_odd,
        r,
        s,
    })
}

fn residual(
    series: &HalfGridSeries,
    lead: &LaurentPoly,
    q: &LaurentPoly,
    rhs: &LaurentPoly,
) -> HalfGridSeries {
    let order = series.order();
    let two_z_lead = HalfGridSeries::from_laurent(&lead.shift(1).scale_rat(&rat(2)), order);
    let q = HalfGridSeries::from_laurent(q, order);
    let rhs = HalfGridSeries::from_laurent(rhs, order);
    let lhs = &(&two_z_lead * &series.differentiate()) - &(&q * series);
    &lhs - &rhs
}

/// `2 z Pbar P_i' - Q_even P_i - R_i` on the recursion series, truncated at
/// `z^order`. Identically zero when the tables are right.
pub fn ode_residual_p(i: i64, order: i64, tables: &CoeffTables) -> Result<HalfGridSeries> {
    let data = build_ode_data(i, tables)?;
    let series = tables.p.series(i, order)?;
    Ok(residual(&series, &data.pbar, &data.q_even, &data.r).truncate(Exponent::int(order)))
}

/// `2 z P Q_i' - Q_odd Q_i - S_i` on the recursion series.
pub fn ode_residual_q(i: i64, order: i64, tables: &CoeffTables) -> Result<HalfGridSeries> {
    let q_table = tables.q()?;
    let data = build_ode_data(i, tables)?;
    let series = q_table.series(i, order)?;
    let s = data.s.expect("S_i exists whenever the Q table does");
    Ok(residual(&series, &data.p, &data.q_odd, &s).truncate(Exponent::int(order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_laurent;

    fn hexic_tables() -> CoeffTables {
        CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap())
    }

    #[test]
    fn hexic_r_polynomials() {
        let tables = hexic_tables();
        let expected = [
            "6*t^5",
            "4*t^4",
            "2*t^3",
            "6*b*t^5",
            "10*b*t^4 - 2*t",
            "14*b*t^3 - 4",
        ];
        for (idx, e) in expected.iter().enumerate() {
            let i = -(idx as i64) - 1;
            assert_eq!(
                r_poly(i, &tables).unwrap(),
                parse_laurent(e).unwrap(),
                "R_{i}"
            );
        }
    }

    #[test]
    fn s_has_no_z_n_plus_one_term() {
        let tables = hexic_tables();
        for i in -6..=-1 {
            let s = s_poly(i, &tables).unwrap();
            assert!(s.coeff(7).is_zero());
        }
        let generic = CoeffTables::new(&CurveSpec::parse("t^5 + 2*t^4 - t^2 + 3*t + 7").unwrap());
        for i in -5..=-1 {
            assert!(s_poly(i, &generic).unwrap().coeff(6).is_zero());
        }
    }

    #[test]
    fn quartic_r_numerator() {
        let tables = CoeffTables::new(&CurveSpec::parse("t^4 - 2*c*t^2 + 1").unwrap());
        // R_{-4} / 2 = 4 c z^2 - 1
        assert_eq!(
            r_poly(-4, &tables).unwrap(),
            parse_laurent("8*c*t^2 - 2").unwrap()
        );
    }

    #[test]
    fn residuals_vanish() {
        let tables = hexic_tables();
        for i in -6..=-1 {
            assert!(
                ode_residual_p(i, 32, &tables).unwrap().is_zero(),
                "P residual i={i}"
            );
            assert!(
                ode_residual_q(i, 32, &tables).unwrap().is_zero(),
                "Q residual i={i}"
            );
        }
    }

    #[test]
    fn q_even_and_q_odd() {
        let data = build_ode_data(-1, &hexic_tables()).unwrap();
        assert_eq!(data.pbar, parse_laurent("t^6 - 2*b*t^3 + 1").unwrap());
        // z Pbar' + 4 Pbar
        assert_eq!(data.q_even, parse_laurent("10*t^6 - 14*b*t^3 + 4").unwrap());
        // z P' + 14 P
        assert_eq!(data.q_odd, parse_laurent("20*t^6 - 34*b*t^3 + 14").unwrap());
    }
}
