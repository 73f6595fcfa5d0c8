//! Closed-form reduction of monomial pairings `t^i [u] d(t^j [u])`.

use crate::curve::{ring_derivative_pairing, CurveSpec, Parity, RingElement};
use crate::engine::CoeffTables;
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, ParamPoly, Rational};
use crate::kaehler::CentralVector;

/// `t^i d(t^j) = j delta_{i+j,0} omega_0`.
pub fn reduce_even_even(i: i64, j: i64, n: usize) -> CentralVector {
    if i + j == 0 && j != 0 {
        CentralVector::basis(n, 0, ParamPoly::int(j))
    } else {
        CentralVector::zero(n)
    }
}

/// `t^i u d(t^j u) = sum_k (j + k/2) a_k delta_{i+j,-k} omega_0`.
pub fn reduce_odd_odd(i: i64, j: i64, spec: &CurveSpec) -> CentralVector {
    let n = spec.degree();
    let k = -(i + j);
    if !(0..=n as i64).contains(&k) {
        return CentralVector::zero(n);
    }
    let weight = rat(j) + ratio(k, 2);
    CentralVector::basis(n, 0, spec.coeff(k).scale(&weight))
}

/// The class of `t^(i+j-1) u dt`: `sum_k P_{i+j-1,-k} omega_k` when
/// `i + j >= -n + 1`, otherwise `sum_k Q_{-i-j+1,-k} omega_k`.
pub fn psi(i: i64, j: i64, tables: &CoeffTables) -> Result<CentralVector> {
    odd_class(i + j - 1, tables)
}

/// The class of `t^e u dt`.
pub fn odd_class(e: i64, tables: &CoeffTables) -> Result<CentralVector> {
    let n = tables.spec().degree();
    let ni = n as i64;
    let mut coords = vec![ParamPoly::zero(); n + 1];
    for k in 1..=ni {
        coords[k as usize] = if e >= -ni {
            tables.p_coeff(e, -k)?
        } else {
            tables.q_coeff(-e, -k)?
        };
    }
    Ok(CentralVector::from_coords(coords))
}

/// `t^i u d(t^j) = j psi_ij`.
pub fn reduce_odd_even(i: i64, j: i64, tables: &CoeffTables) -> Result<CentralVector> {
    let n = tables.spec().degree();
    if j == 0 {
        return Ok(CentralVector::zero(n));
    }
    Ok(psi(i, j, tables)?.scale_rat(&rat(j)))
}

/// `t^i d(t^j u) = -t^j u d(t^i)`, since `d(t^(i+j) u)` is exact.
pub fn reduce_even_odd(i: i64, j: i64, tables: &CoeffTables) -> Result<CentralVector> {
    Ok(-&reduce_odd_even(j, i, tables)?)
}

/// One relation `t^lead u dt = sum_e c_e t^e u dt` coming from exactness of
/// `d(t^i u^(m+1))` on `u^m = p(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: i64,
    pub terms: Vec<(i64, ParamPoly)>,
}

/// `((m+1)n + im) t^(n+i-1) u dt = -sum_{j<n} ((m+1)j + mi) a_j t^(i+j-1) u dt`,
/// solved for the leading monomial.
pub fn rewrite_step(m: i64, spec: &CurveSpec, i: i64) -> Result<RewriteRule> {
    if m < 2 {
        return Err(Error::IndexOutOfRange(format!(
            "rewrite needs m >= 2, got {m}"
        )));
    }
    let n = spec.degree() as i64;
    let lead_scalar = (m + 1) * n + i * m;
    if lead_scalar == 0 {
        return Err(Error::SingularRewrite { m, i });
    }
    let inv = Rational::new((-1).into(), lead_scalar.into());
    let terms = (0..n)
        .filter_map(|j| {
            let c = spec.coeff(j).scale(&(rat((m + 1) * j + m * i) * &inv));
            (!c.is_zero()).then_some((i + j - 1, c))
        })
        .collect();
    Ok(RewriteRule {
        lead: n + i - 1,
        terms,
    })
}

/// The class of `f dg` in `Omega^1_R / dR`.
pub fn cocycle(f: &RingElement, g: &RingElement, tables: &CoeffTables) -> Result<CentralVector> {
    let spec = tables.spec();
    let n = spec.degree();
    let mut acc = CentralVector::zero(n);
    for pair in ring_derivative_pairing(f, g) {
        let v = match (pair.left, pair.right) {
            (Parity::Even, Parity::Even) => reduce_even_even(pair.i, pair.j, n),
            (Parity::Odd, Parity::Odd) => reduce_odd_odd(pair.i, pair.j, spec),
            (Parity::Odd, Parity::Even) => reduce_odd_even(pair.i, pair.j, tables)?,
            (Parity::Even, Parity::Odd) => reduce_even_odd(pair.i, pair.j, tables)?,
        };
        if !v.is_zero() {
            acc += &v.scale(&pair.weight);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_param_poly;

    fn hexic() -> CoeffTables {
        CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap())
    }

    fn poly(s: &str) -> ParamPoly {
        parse_param_poly(s).unwrap()
    }

    #[test]
    fn even_even() {
        assert_eq!(
            reduce_even_even(2, -2, 6),
            CentralVector::basis(6, 0, ParamPoly::int(-2))
        );
        assert!(reduce_even_even(0, 5, 6).is_zero());
        assert_eq!(
            reduce_even_even(-3, 3, 6),
            CentralVector::basis(6, 0, ParamPoly::int(3))
        );
    }

    #[test]
    fn odd_odd() {
        let tables = hexic();
        let spec = tables.spec();
        assert!(reduce_odd_odd(0, 0, spec).is_zero());
        assert_eq!(
            reduce_odd_odd(-3, 0, spec),
            CentralVector::basis(6, 0, poly("-3*b"))
        );
        assert!(reduce_odd_odd(-6, 1, spec).is_zero());
    }

    #[test]
    fn odd_even_and_skew() {
        let tables = hexic();
        let expected = CentralVector::from_coords(vec![
            poly("0"),
            poly("3/2*b"),
            poly("0"),
            poly("0"),
            poly("3/2"),
            poly("0"),
            poly("0"),
        ]);
        assert_eq!(reduce_odd_even(0, 3, &tables).unwrap(), expected);
        assert_eq!(reduce_even_odd(3, 0, &tables).unwrap(), -&expected);
        assert!(reduce_odd_even(-8, 0, &tables).unwrap().is_zero());
        assert!(reduce_even_odd(0, -2, &tables).unwrap().is_zero());
    }

    #[test]
    fn branches_agree_on_overlap() {
        let tables = hexic();
        for m in 1..=6i64 {
            let e = -m;
            let mut p_side = vec![ParamPoly::zero(); 7];
            let mut q_side = vec![ParamPoly::zero(); 7];
            for k in 1..=6 {
                p_side[k as usize] = tables.p_coeff(e, -k).unwrap();
                q_side[k as usize] = tables.q_coeff(-e, -k).unwrap();
            }
            assert_eq!(p_side, q_side);
            assert_eq!(
                odd_class(e, &tables).unwrap(),
                CentralVector::basis(6, m as usize, ParamPoly::one())
            );
        }
    }

    #[test]
    fn rewrite_matches_recursion() {
        let tables = hexic();
        let spec = tables.spec().clone();
        let n = 6;
        for k in 0..8i64 {
            let rule = rewrite_step(2, &spec, k - n + 1).unwrap();
            assert_eq!(rule.lead, k);
            for i in -6..=-1 {
                let mut rhs = ParamPoly::zero();
                for (e, c) in &rule.terms {
                    rhs += &(c * &tables.p_coeff(*e, i).unwrap());
                }
                assert_eq!(rhs, tables.p_coeff(k, i).unwrap());
            }
        }
        assert!(matches!(
            rewrite_step(2, &spec, -9),
            Err(Error::SingularRewrite { m: 2, i: -9 })
        ));
        let cubic = rewrite_step(3, &spec, 1).unwrap();
        // leading scalar 4*6 + 3 = 27; j = 0 weight 3, j = 3 weight 15
        assert_eq!(
            cubic.terms,
            vec![(0, ParamPoly::constant(ratio(-1, 9))), (3, poly("10/9*b"))]
        );
    }

    #[test]
    fn cocycle_examples() {
        let tables = hexic();
        let spec = tables.spec().clone();
        let r = |s: &str| RingElement::parse(s, &spec).unwrap();
        assert_eq!(
            cocycle(&r("t^2"), &r("t^-2"), &tables).unwrap(),
            CentralVector::basis(6, 0, ParamPoly::int(-2))
        );
        assert_eq!(
            cocycle(&r("u"), &r("t^3"), &tables).unwrap(),
            reduce_odd_even(0, 3, &tables).unwrap()
        );
        for x in ["t^3*u + b*t^-2", "u", "t^-7*u - t"] {
            assert!(cocycle(&r("1"), &r(x), &tables).unwrap().is_zero());
            assert!(cocycle(&r(x), &r("1"), &tables).unwrap().is_zero());
        }
    }
}
