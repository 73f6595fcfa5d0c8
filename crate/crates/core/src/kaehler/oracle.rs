//! Brute-force reduction of 1-forms by exact linear algebra inside a
//! finite Laurent window.
//!
//! The space is spanned by `t^e dt` and `t^e u dt` for `-N <= e <= N`; the
//! exact forms in it are spanned by `d(t^m) = m t^(m-1) dt` and by
//! `d(t^i u^3) = sum_j (i + 3j/2) a_j t^(i+j-1) u dt`, kept whenever every
//! term lies inside the window. Nothing here consults the recursions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::curve::{curve_validate, CurveSpec};
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, ParamPoly, Rational};
use crate::kaehler::form::{normalize, OneForm};
use crate::kaehler::CentralVector;

type Row = BTreeMap<usize, Rational>;

/// Window bound `N` and the rational point at which parameters are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWindow {
    pub bound: i64,
    pub point: BTreeMap<String, Rational>,
}

impl ReductionWindow {
    pub fn new(bound: i64, point: BTreeMap<String, Rational>) -> Self {
        ReductionWindow { bound, point }
    }

    /// `max(3n, |e| + 2n)` for a form whose extreme exponent is `e`.
    pub fn default_bound(n: usize, exponent: i64) -> i64 {
        let n = n as i64;
        (3 * n).max(exponent.abs() + 2 * n)
    }
}

/// Factored relation matrix for one numeric curve and one window.
#[derive(Clone, Debug)]
pub struct QuotientOracle {
    spec: CurveSpec,
    bound: i64,
    columns: usize,
    // pivot column -> reduced row with a 1 in that column
    pivots: BTreeMap<usize, Row>,
}

impl QuotientOracle {
    pub fn new(spec: &CurveSpec, window: &ReductionWindow) -> Result<Self> {
        let spec = curve_validate(instantiate(spec, &window.point)?)?;
        let n = spec.degree() as i64;
        if window.bound < 3 * n {
            return Err(Error::Oracle(format!(
                "window bound {} is below 3n = {}",
                window.bound,
                3 * n
            )));
        }
        let mut oracle = QuotientOracle {
            spec,
            bound: window.bound,
            columns: 2 * (2 * window.bound as usize + 1),
            pivots: BTreeMap::new(),
        };
        for row in oracle.relations() {
            oracle.insert(row);
        }
        if let Some(k) =
            (0..=n as usize).find(|&k| oracle.pivots.contains_key(&oracle.basis_column(k)))
        {
            return Err(Error::Oracle(format!(
                "omega_{k} is exact inside the window"
            )));
        }
        Ok(oracle)
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Dimension of the window space.
    pub fn dimension(&self) -> usize {
        self.columns
    }

    /// Rank of the exact forms inside the window.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.columns - self.rank()
    }

    fn n(&self) -> usize {
        self.spec.degree()
    }

    /// Columns run over the non-basis monomials first and end with
    /// `omega_0, ..., omega_n`, so the free columns of the echelon form are
    /// exactly the basis once the quotient has dimension `n + 1`.
    fn basis_column(&self, k: usize) -> usize {
        self.columns - (self.n() + 1) + k
    }

    fn column(&self, odd: bool, e: i64) -> usize {
        let n = self.n() as i64;
        if !odd && e == -1 {
            return self.basis_column(0);
        }
        if odd && (-n..=-1).contains(&e) {
            return self.basis_column((-e) as usize);
        }
        let width = 2 * self.bound + 1;
        let mut idx = e + self.bound;
        if !odd {
            if e > -1 {
                idx -= 1;
            }
        } else {
            idx += width - 1;
            if e > -1 {
                idx -= n;
            }
        }
        idx as usize
    }

    fn relations(&self) -> Vec<Row> {
        let big_n = self.bound;
        let n = self.n() as i64;
        let mut rows = Vec::new();
        for m in (1 - big_n)..=(big_n + 1) {
            if m != 0 {
                rows.push(Row::from([(self.column(false, m - 1), rat(m))]));
            }
        }
        for i in (1 - big_n)..=(big_n - n + 1) {
            let mut row = Row::new();
            for j in 0..=n {
                let a = self.spec.coeff(j).constant_term();
                let w = (rat(i) + ratio(3 * j, 2)) * a;
                if !w.is_zero() {
                    row.insert(self.column(true, i + j - 1), w);
                }
            }
            rows.push(row);
        }
        rows
    }

    fn eliminate(&self, row: &mut Row) {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for c in hits {
            let Some(factor) = row.get(&c).cloned() else {
                continue;
            };
            axpy(row, &self.pivots[&c], &-factor);
        }
    }

    fn insert(&mut self, mut row: Row) {
        self.eliminate(&mut row);
        let Some((&col, lead)) = row.iter().next() else {
            return;
        };
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.pivots.values_mut() {
            if let Some(f) = other.get(&col).cloned() {
                axpy(other, &row, &-f);
            }
        }
        self.pivots.insert(col, row);
    }

    /// Coordinates of `form` on `omega_0..omega_n`.
    pub fn reduce(&self, form: &OneForm) -> Result<CentralVector> {
        let nf = normalize(form, &self.spec)?;
        let mut row = Row::new();
        for (odd, part) in [(false, &nf.dt), (true, &nf.udt)] {
            for (e, c) in part.terms() {
                if e.abs() > self.bound {
                    return Err(Error::WindowTooSmall {
                        exponent: e,
                        window: self.bound,
                    });
                }
                let c = c.as_constant().ok_or_else(|| {
                    Error::Oracle(format!("coefficient {c} is not a rational number"))
                })?;
                let col = self.column(odd, e);
                let entry = row.entry(col).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    row.remove(&col);
                }
            }
        }
        self.eliminate(&mut row);
        let n = self.n();
        let first_basis = self.basis_column(0);
        if let Some((&col, _)) = row.iter().find(|(c, _)| **c < first_basis) {
            return Err(Error::Oracle(format!(
                "column {col} has no pivot inside the window"
            )));
        }
        let mut coords = vec![ParamPoly::zero(); n + 1];
        for (col, c) in row {
            coords[col - first_basis] = ParamPoly::constant(c);
        }
        Ok(CentralVector::from_coords(coords))
    }
}

fn instantiate(spec: &CurveSpec, point: &BTreeMap<String, Rational>) -> Result<CurveSpec> {
    let out = spec.instantiate(point);
    if let Some(name) = out.params().into_iter().next() {
        return Err(Error::MissingBinding(name));
    }
    Ok(out)
}

fn axpy(row: &mut Row, other: &Row, factor: &Rational) {
    for (c, v) in other {
        let entry = row.entry(*c).or_insert_with(Rational::zero);
        *entry += v * factor;
        if entry.is_zero() {
            row.remove(c);
        }
    }
}

/// One-shot reduction with the default window for the form's exponents.
pub fn oracle_reduce(
    form: &OneForm,
    spec: &CurveSpec,
    point: &BTreeMap<String, Rational>,
) -> Result<CentralVector> {
    let numeric = instantiate(spec, point)?;
    let nf = normalize(form, &numeric)?;
    let extreme = nf
        .exponent_range()
        .map(|(lo, hi)| lo.abs().max(hi.abs()))
        .unwrap_or(0);
    let window = ReductionWindow::new(
        ReductionWindow::default_bound(spec.degree(), extreme),
        point.clone(),
    );
    QuotientOracle::new(&numeric, &window)?.reduce(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(b: i64) -> BTreeMap<String, Rational> {
        BTreeMap::from([("b".to_string(), rat(b))])
    }

    fn hexic_oracle(b: i64) -> QuotientOracle {
        let spec = CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap();
        QuotientOracle::new(&spec, &ReductionWindow::new(30, point(b))).unwrap()
    }

    #[test]
    fn columns_are_a_bijection() {
        let o = hexic_oracle(2);
        let mut seen = std::collections::BTreeSet::new();
        for e in -30..=30 {
            assert!(seen.insert(o.column(false, e)));
            assert!(seen.insert(o.column(true, e)));
        }
        assert_eq!(seen.len(), o.dimension());
        assert_eq!(*seen.iter().next_back().unwrap(), o.dimension() - 1);
    }

    #[test]
    fn quotient_has_dimension_n_plus_one() {
        assert_eq!(hexic_oracle(2).quotient_dim(), 7);
        let quartic = CurveSpec::parse("t^4 - 2*c*t^2 + 1").unwrap();
        let w = ReductionWindow::new(12, BTreeMap::from([("c".to_string(), ratio(1, 3))]));
        assert_eq!(QuotientOracle::new(&quartic, &w).unwrap().quotient_dim(), 5);
    }

    #[test]
    fn basis_forms_reduce_to_themselves() {
        let o = hexic_oracle(2);
        assert_eq!(
            o.reduce(&OneForm::t_dt(-1)).unwrap(),
            CentralVector::basis(6, 0, ParamPoly::one())
        );
        assert_eq!(
            o.reduce(&OneForm::t_u_dt(-2)).unwrap(),
            CentralVector::basis(6, 2, ParamPoly::one())
        );
    }

    #[test]
    fn hexic_t2_u_dt() {
        let v = hexic_oracle(2).reduce(&OneForm::t_u_dt(2)).unwrap();
        let mut expected = CentralVector::basis(6, 1, ParamPoly::one());
        expected += &CentralVector::basis(6, 4, ParamPoly::constant(ratio(1, 2)));
        assert_eq!(v, expected);
    }

    #[test]
    fn hexic_q_side_values() {
        let o = hexic_oracle(2);
        // Q_{7,-1} = 1/2 and Q_{7,-4} = b/2
        let mut expected = CentralVector::basis(6, 1, ParamPoly::constant(ratio(1, 2)));
        expected += &CentralVector::basis(6, 4, ParamPoly::one());
        assert_eq!(o.reduce(&OneForm::t_u_dt(-7)).unwrap(), expected);
        let v = o.reduce(&OneForm::t_u_dt(-8)).unwrap();
        assert!(v.coord(1).is_zero());
    }

    #[test]
    fn exact_forms_vanish() {
        let o = hexic_oracle(3);
        let spec = o.spec().clone();
        for g in ["t^5*u", "t^-4*u + t^2", "u", "t^-3*u^3"] {
            let form = OneForm::new(
                crate::curve::RingElement::one(),
                crate::curve::RingElement::parse(g, &spec).unwrap(),
            );
            assert!(o.reduce(&form).unwrap().is_zero(), "d({g})");
        }
    }

    #[test]
    fn window_errors() {
        let o = hexic_oracle(2);
        assert!(matches!(
            o.reduce(&OneForm::t_u_dt(31)),
            Err(Error::WindowTooSmall {
                exponent: 31,
                window: 30
            })
        ));
        let spec = CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap();
        assert!(QuotientOracle::new(&spec, &ReductionWindow::new(10, point(2))).is_err());
        assert!(matches!(
            QuotientOracle::new(&spec, &ReductionWindow::new(30, BTreeMap::new())),
            Err(Error::MissingBinding(_))
        ));
        assert!(oracle_reduce(&OneForm::t_u_dt(40), &spec, &point(2)).is_ok());
    }
}
