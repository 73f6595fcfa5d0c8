//! Finite dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat, Rational};

/// Sparse vector over the basis of a Lie algebra.
pub type LieVector = BTreeMap<usize, Rational>;

/// `[x_a, x_b] = sum_c C_ab^c x_c` together with the invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleLieAlgebra {
    name: String,
    labels: Vec<String>,
    // structure[a * dim + b] = [x_a, x_b]
    structure: Vec<LieVector>,
    form: Vec<Vec<Rational>>,
}

impl SimpleLieAlgebra {
    /// Builds the algebra from brackets of basis pairs, checking
    /// antisymmetry, Jacobi and nondegeneracy of the Killing form.
    pub fn from_structure(
        name: &str,
        labels: Vec<String>,
        brackets: &[(usize, usize, LieVector)],
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Algebra("empty basis".into()));
        }
        let mut structure = vec![LieVector::new(); dim * dim];
        let mut given = vec![false; dim * dim];
        for (a, b, v) in brackets {
            let (a, b) = (*a, *b);
            if a >= dim || b >= dim || v.keys().any(|&c| c >= dim) {
                return Err(Error::Algebra(format!(
                    "basis index out of range in [{a}, {b}]"
                )));
            }
            let v: LieVector = v
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (*k, c.clone()))
                .collect();
            if a == b && !v.is_empty() {
                return Err(Error::Algebra(format!("[{0}, {0}] must vanish", labels[a])));
            }
            let neg: LieVector = v.iter().map(|(k, c)| (*k, -c)).collect();
            for (slot, val) in [(a * dim + b, v), (b * dim + a, neg)] {
                if given[slot] && structure[slot] != val {
                    return Err(Error::Algebra(format!(
                        "inconsistent brackets for [{}, {}] (antisymmetry violated)",
                        labels[slot / dim],
                        labels[slot % dim]
                    )));
                }
                given[slot] = true;
                structure[slot] = val;
            }
        }
        let mut alg = SimpleLieAlgebra {
            name: name.to_string(),
            labels,
            structure,
            form: Vec::new(),
        };
        alg.check_jacobi()?;
        alg.form = alg.killing_matrix();
        if rank(alg.form.clone()) < dim {
            return Err(Error::Algebra(
                "Killing form is degenerate; the algebra is not semisimple".into(),
            ));
        }
        Ok(alg)
    }

    /// `sl_2` with basis `e, h, f`.
    pub fn sl2() -> Self {
        let v = |pairs: &[(usize, i64)]| {
            pairs
                .iter()
                .map(|(k, c)| (*k, rat(*c)))
                .collect::<LieVector>()
        };
        let brackets = [
            (1, 0, v(&[(0, 2)])),
            (1, 2, v(&[(2, -2)])),
            (0, 2, v(&[(1, 1)])),
        ];
        Self::from_structure("sl2", vec!["e".into(), "h".into(), "f".into()], &brackets)
            .expect("sl2 structure constants are valid")
    }

    /// `sl_m` with basis `E_ij` (`i != j`) and `H_i = E_ii - E_(i+1)(i+1)`.
    pub fn sl(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Algebra(format!("sl_{m} is not simple")));
        }
        let mut labels = Vec::new();
        let mut matrices: Vec<Vec<Vec<i64>>> = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut e = vec![vec![0i64; m]; m];
            e[i][j] = 1;
            e
        };
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    matrices.push(unit(i, j));
                }
            }
        }
        for i in 0..m - 1 {
            labels.push(format!("H{}", i + 1));
            let mut h = vec![vec![0i64; m]; m];
            h[i][i] = 1;
            h[i + 1][i + 1] = -1;
            matrices.push(h);
        }
        let offdiag = |i: usize, j: usize| {
            let mut idx = i * (m - 1) + j;
            if j > i {
                idx -= 1;
            }
            idx
        };
        let h_base = m * (m - 1);
        let mut brackets = Vec::new();
        for a in 0..matrices.len() {
            for b in (a + 1)..matrices.len() {
                let c = commutator(&matrices[a], &matrices[b]);
                let mut v = LieVector::new();
                for (i, row) in c.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        if i != j && x != 0 {
                            v.insert(offdiag(i, j), rat(x));
                        }
                    }
                }
                // diag(d) = sum_i c_i H_i with c_i = d_1 + ... + d_i
                let mut acc = 0i64;
                for (i, row) in c.iter().enumerate().take(m - 1) {
                    acc += row[i];
                    if acc != 0 {
                        v.insert(h_base + i, rat(acc));
                    }
                }
                brackets.push((a, b, v));
            }
        }
        Self::from_structure(&format!("sl{m}"), labels, &brackets)
    }

    /// Parses CSV rows `i,j,k,c` meaning `[x_i, x_j]` has coefficient `c` on
    /// `x_k`. Indices are 0-based integers or labels. Lines starting with `#`
    /// are ignored; a header row `i,j,k,...` is skipped.
    pub fn from_csv(name: &str, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(false)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Algebra(format!("structure file: {e}")))?;
            if record.len() != 4 {
                return Err(Error::Algebra(format!(
                    "row {}: expected 4 fields, found {}",
                    line + 1,
                    record.len()
                )));
            }
            if line == 0 && record.get(3).is_some_and(|c| parse_rational(c).is_err()) {
                continue;
            }
            let f: Vec<String> = record.iter().map(str::to_string).collect();
            let c = parse_rational(&f[3]).map_err(|_| {
                Error::Algebra(format!("row {}: bad coefficient `{}`", line + 1, f[3]))
            })?;
            rows.push((f[0].clone(), f[1].clone(), f[2].clone(), c));
        }
        let numeric = rows
            .iter()
            .all(|(a, b, c, _)| [a, b, c].iter().all(|s| s.parse::<usize>().is_ok()));
        let mut labels: Vec<String> = Vec::new();
        let index = |s: &str, labels: &mut Vec<String>| -> usize {
            if numeric {
                let i: usize = s.parse().unwrap();
                while labels.len() <= i {
                    labels.push(format!("x{}", labels.len()));
                }
                i
            } else if let Some(i) = labels.iter().position(|l| l == s) {
                i
            } else {
                labels.push(s.to_string());
                labels.len() - 1
            }
        };
        let mut grouped: BTreeMap<(usize, usize), LieVector> = BTreeMap::new();
        for (a, b, c, coeff) in rows {
            let (a, b, c) = (
                index(&a, &mut labels),
                index(&b, &mut labels),
                index(&c, &mut labels),
            );
            *grouped
                .entry((a, b))
                .or_default()
                .entry(c)
                .or_insert_with(Rational::zero) += coeff;
        }
        let brackets: Vec<_> = grouped.into_iter().map(|((a, b), v)| (a, b, v)).collect();
        Self::from_structure(name, labels, &brackets)
    }

    /// `sl2`, `slN:k` (or `slk`), or `file:path`.
    pub fn from_selector(selector: &str) -> Result<Self> {
        if selector == "sl2" {
            return Ok(Self::sl2());
        }
        if let Some(path) = selector.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Algebra(format!("{path}: {e}")))?;
            return Self::from_csv(path, &text);
        }
        let k = selector
            .strip_prefix("slN:")
            .or_else(|| selector.strip_prefix("sl"))
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| {
                Error::Algebra(format!(
                    "unknown algebra `{selector}` (expected sl2, slN:k or file:path)"
                ))
            })?;
        if k == 2 {
            Ok(Self::sl2())
        } else {
            Self::sl(k)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[x_a, x_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &LieVector {
        &self.structure[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> LieVector {
        let mut out = LieVector::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let coeff = ca * cb;
                for (c, s) in self.bracket_basis(*a, *b) {
                    *out.entry(*c).or_insert_with(Rational::zero) += &coeff * s;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `(x_a, x_b)`.
    pub fn form_basis(&self, a: usize, b: usize) -> &Rational {
        &self.form[a][b]
    }

    /// `(x, y) = tr(ad x ad y)`, extended bilinearly.
    pub fn killing_form(&self, x: &LieVector, y: &LieVector) -> Rational {
        let mut acc = Rational::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                acc += ca * cb * &self.form[*a][*b];
            }
        }
        acc
    }

    fn killing_matrix(&self) -> Vec<Vec<Rational>> {
        let dim = self.dim();
        let mut form = vec![vec![Rational::zero(); dim]; dim];
        for (a, row) in form.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                // tr(ad x_a ad x_b) = sum_c [x_a, [x_b, x_c]]_c
                let mut tr = Rational::zero();
                for c in 0..dim {
                    for (d, s) in self.bracket_basis(b, c) {
                        if let Some(t) = self.bracket_basis(a, *d).get(&c) {
                            tr += s * t;
                        }
                    }
                }
                *slot = tr;
            }
        }
        form
    }

    fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        let unit = |a: usize| LieVector::from([(a, rat(1))]);
        for a in 0..dim {
            for b in (a + 1)..dim {
                for c in (b + 1)..dim {
                    let (x, y, z) = (unit(a), unit(b), unit(c));
                    let mut sum = LieVector::new();
                    for v in [
                        self.bracket(&x, &self.bracket(&y, &z)),
                        self.bracket(&y, &self.bracket(&z, &x)),
                        self.bracket(&z, &self.bracket(&x, &y)),
                    ] {
                        for (k, c) in v {
                            *sum.entry(k).or_insert_with(Rational::zero) += c;
                        }
                    }
                    if sum.values().any(|c| !c.is_zero()) {
                        return Err(Error::Algebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn commutator(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = x.len();
    let mut out = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                out[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
            }
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] * &inv;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(a: usize) -> LieVector {
        LieVector::from([(a, rat(1))])
    }

    #[test]
    fn sl2_killing() {
        let g = SimpleLieAlgebra::sl2();
        let (e, h, f) = (unit(0), unit(1), unit(2));
        assert_eq!(g.killing_form(&e, &f), rat(4));
        assert_eq!(g.killing_form(&h, &h), rat(8));
        assert_eq!(g.killing_form(&e, &e), rat(0));
        assert_eq!(g.bracket(&e, &f), h);
    }

    #[test]
    fn sl3_and_sl4_are_valid() {
        for m in [3, 4] {
            let g = SimpleLieAlgebra::sl(m).unwrap();
            assert_eq!(g.dim(), m * m - 1);
            // Killing form of sl_m is 2m tr(xy); tr(E12 E21) = 1
            let (e12, e21) = (g.index_of("E12").unwrap(), g.index_of("E21").unwrap());
            assert_eq!(g.form_basis(e12, e21), &rat(2 * m as i64));
        }
    }

    #[test]
    fn form_is_invariant() {
        let g = SimpleLieAlgebra::sl(3).unwrap();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                for c in 0..g.dim() {
                    let lhs = g.killing_form(&g.bracket(&unit(a), &unit(b)), &unit(c));
                    let rhs = g.killing_form(&unit(a), &g.bracket(&unit(b), &unit(c)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let text = "i,j,k,c\nh,e,e,2\nh,f,f,-2\ne,f,h,1\n";
        let g = SimpleLieAlgebra::from_csv("custom", text).unwrap();
        assert_eq!(g.labels(), &["h", "e", "f"]);
        assert_eq!(g.killing_form(&unit(1), &unit(2)), rat(4));
        let numeric = "1,0,0,2\n1,2,2,-2\n0,2,1,1\n";
        assert_eq!(
            SimpleLieAlgebra::from_csv("n", numeric).unwrap().form,
            SimpleLieAlgebra::sl2().form
        );
        assert!(SimpleLieAlgebra::from_csv("bad", "0,1,0,1\n1,0,0,1\n").is_err());
        // abelian: degenerate form
        assert!(SimpleLieAlgebra::from_csv("ab", "0,1,1,0\n").is_err());
        // Heisenberg-like bracket fails nondegeneracy
        assert!(SimpleLieAlgebra::from_csv("heis", "0,1,2,1\n").is_err());
    }

    #[test]
    fn selectors() {
        assert_eq!(SimpleLieAlgebra::from_selector("sl2").unwrap().dim(), 3);
        assert_eq!(SimpleLieAlgebra::from_selector("slN:3").unwrap().dim(), 8);
        assert!(SimpleLieAlgebra::from_selector("so5").is_err());
    }
}
