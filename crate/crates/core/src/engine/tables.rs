//! Memoized coefficient families `P_{k,i}` and `Q_{m,i}`.
//!
//! `P_{k,i}` (k >= -n, -n <= i <= -1) is the coefficient of `omega_{-i}` in the
//! class of `t^k u dt`; `Q_{m,i}` (m >= 1) is the same for `t^{-m} u dt`.

use std::sync::RwLock;

use num_traits::Zero;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::exact::{rat, Exponent, HalfGridSeries, ParamPoly, Rational};

fn check_index(i: i64, n: i64) -> Result<usize> {
    if !(-n..=-1).contains(&i) {
        return Err(Error::IndexOutOfRange(format!("i = {i} not in [-{n}, -1]")));
    }
    Ok((-i - 1) as usize)
}

/// Table of `P_{k,i}` driven by
/// `(2k+n+2) P_{k,i} = -sum_{j<n} (3j+2k-2n+2) a_j P_{k-n+j,i}` for `k >= 0`
/// from `P_{k,i} = delta_{k,i}` on `-n <= k <= -1`.
#[derive(Debug)]
pub struct PCoeffTable {
    spec: CurveSpec,
    // rows[k + n][-i - 1]
    rows: RwLock<Vec<Vec<ParamPoly>>>,
}

impl PCoeffTable {
    pub fn new(spec: &CurveSpec) -> Self {
        let n = spec.degree() as i64;
        let rows = (-n..0)
            .map(|k| {
                (1..=n)
                    .map(|m| {
                        if k == -m {
                            ParamPoly::one()
                        } else {
                            ParamPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        PCoeffTable {
            spec: spec.clone(),
            rows: RwLock::new(rows),
        }
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn get(&self, k: i64, i: i64) -> Result<ParamPoly> {
        let n = self.spec.degree() as i64;
        let col = check_index(i, n)?;
        if k < -n {
            return Err(Error::IndexOutOfRange(format!(
                "P_{{k,i}} needs k >= -{n}, got k = {k}"
            )));
        }
        let row = (k + n) as usize;
        {
            let rows = self.rows.read().expect("table lock poisoned");
            if let Some(r) = rows.get(row) {
                return Ok(r[col].clone());
            }
        }
        let mut rows = self.rows.write().expect("table lock poisoned");
        while rows.len() <= row {
            let k = rows.len() as i64 - n;
            let next = self.next_row(&rows, k);
            rows.push(next);
        }
        Ok(rows[row][col].clone())
    }

    fn next_row(&self, rows: &[Vec<ParamPoly>], k: i64) -> Vec<ParamPoly> {
        let n = self.spec.degree() as i64;
        let lead = rat(2 * k + n + 2);
        (0..n as usize)
            .map(|col| {
                let mut acc = ParamPoly::zero();
                for j in 0..n {
                    let a = self.spec.coeff(j);
                    let weight = 3 * j + 2 * k - 2 * n + 2;
                    if a.is_zero() || weight == 0 {
                        continue;
                    }
                    let prev = &rows[(k - n + j + n) as usize][col];
                    if prev.is_zero() {
                        continue;
                    }
                    acc -= &(&a * prev).scale(&rat(weight));
                }
                acc.scale(&lead.recip())
            })
            .collect()
    }

    /// `P_i(z) = sum_{k >= -n} P_{k,i} z^{k+n}`, truncated below `z^order`.
    pub fn series(&self, i: i64, order: i64) -> Result<HalfGridSeries> {
        let n = self.spec.degree() as i64;
        check_index(i, n)?;
        let mut terms = Vec::new();
        for m in 0..order.max(0) {
            terms.push((Exponent::int(m), self.get(m - n, i)?));
        }
        Ok(HalfGridSeries::from_terms(
            terms,
            Exponent::int(order.max(0)),
        ))
    }
}

/// Table of `Q_{m,i}` driven by
/// `-2(m-1) a_0 Q_{m,i} = -sum_{1<=j<=n} (3j-2m+2) a_j Q_{m-j,i}` for `m >= n+1`
/// from `Q_{m,i} = delta_{m,-i}` on `1 <= m <= n`. Requires a numeric `a_0`.
#[derive(Debug)]
pub struct QCoeffTable {
    spec: CurveSpec,
    a0: Rational,
    // rows[m - 1][-i - 1]
    rows: RwLock<Vec<Vec<ParamPoly>>>,
}

impl QCoeffTable {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        let a0 = spec
            .numeric_a0()
            .filter(|a| !a.is_zero())
            .ok_or_else(|| Error::SymbolicA0(spec.coeff(0).to_string()))?;
        let n = spec.degree() as i64;
        let rows = (1..=n)
            .map(|m| {
                (1..=n)
                    .map(|c| {
                        if m == c {
                            ParamPoly::one()
                        } else {
                            ParamPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(QCoeffTable {
            spec: spec.clone(),
            a0,
            rows: RwLock::new(rows),
        })
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    pub fn get(&self, m: i64, i: i64) -> Result<ParamPoly> {
        let n = self.spec.degree() as i64;
        let col = check_index(i, n)?;
        if m < 1 {
            return Err(Error::IndexOutOfRange(format!(
                "Q_{{m,i}} needs m >= 1, got m = {m}"
            )));
        }
        let row = (m - 1) as usize;
        {
            let rows = self.rows.read().expect("table lock poisoned");
            if let Some(r) = rows.get(row) {
                return Ok(r[col].clone());
            }
        }
        let mut rows = self.rows.write().expect("table lock poisoned");
        while rows.len() <= row {
            let m = rows.len() as i64 + 1;
            let next = self.next_row(&rows, m);
            rows.push(next);
        }
        Ok(rows[row][col].clone())
    }

    fn next_row(&self, rows: &[Vec<ParamPoly>], m: i64) -> Vec<ParamPoly> {
        let n = self.spec.degree() as i64;
        let denom = &self.a0 * rat(2 * (m - 1));
        (0..n as usize)
            .map(|col| {
                let mut acc = ParamPoly::zero();
                for j in 1..=n {
                    let a = self.spec.coeff(j);
                    let weight = 3 * j - 2 * m + 2;
                    if a.is_zero() || weight == 0 {
                        continue;
                    }
                    let prev = &rows[(m - j - 1) as usize][col];
                    if prev.is_zero() {
                        continue;
                    }
                    acc += &(&a * prev).scale(&rat(weight));
                }
                acc.scale(&denom.recip())
            })
            .collect()
    }

    /// `Q_i(z) = sum_{m >= 1} Q_{m,i} z^{m+n}`, truncated below `z^order`.
    pub fn series(&self, i: i64, order: i64) -> Result<HalfGridSeries> {
        let n = self.spec.degree() as i64;
        check_index(i, n)?;
        let mut terms = Vec::new();
        for e in (n + 1)..order {
            terms.push((Exponent::int(e), self.get(e - n, i)?));
        }
        Ok(HalfGridSeries::from_terms(
            terms,
            Exponent::int(order.max(0)),
        ))
    }
}

/// Both coefficient families for one curve, built once and shared read-only.
#[derive(Debug)]
pub struct CoeffTables {
    pub p: PCoeffTable,
    q: Result<QCoeffTable>,
}

impl CoeffTables {
    pub fn new(spec: &CurveSpec) -> Self {
        CoeffTables {
            p: PCoeffTable::new(spec),
            q: QCoeffTable::new(spec),
        }
    }

    pub fn spec(&self) -> &CurveSpec {
        self.p.spec()
    }

    pub fn q(&self) -> Result<&QCoeffTable> {
        self.q.as_ref().map_err(Clone::clone)
    }

    pub fn p_coeff(&self, k: i64, i: i64) -> Result<ParamPoly> {
        self.p.get(k, i)
    }

    pub fn q_coeff(&self, m: i64, i: i64) -> Result<ParamPoly> {
        self.q()?.get(m, i)
    }
}

/// One-shot `P_{k,i}`.
pub fn p_coeff(k: i64, i: i64, spec: &CurveSpec) -> Result<ParamPoly> {
    PCoeffTable::new(spec).get(k, i)
}

/// One-shot `Q_{m,i}`.
pub fn q_coeff(m: i64, i: i64, spec: &CurveSpec) -> Result<ParamPoly> {
    QCoeffTable::new(spec)?.get(m, i)
}

pub fn p_series(i: i64, order: i64, spec: &CurveSpec) -> Result<HalfGridSeries> {
    PCoeffTable::new(spec).series(i, order)
}

pub fn q_series(i: i64, order: i64, spec: &CurveSpec) -> Result<HalfGridSeries> {
    QCoeffTable::new(spec)?.series(i, order)
}
