//! The bracket on `g (x) R (+) Omega^1_R / dR`:
//! `[x (x) f, y (x) g] = [x, y] (x) fg + (x, y) class(f dg)`.

use serde::Serialize;

use crate::curve::{CurveSpec, Parity, RingElement};
use crate::engine::CoeffTables;
use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPoly, ParamPoly};
use crate::kaehler::{
    reduce_even_even, reduce_even_odd, reduce_odd_even, reduce_odd_odd, CentralVector,
};
use crate::lie::{LoopElement, SimpleLieAlgebra};

/// Which central term to use for two odd monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BracketVariant {
    /// `(x, y) sum_k (j + k/2) a_k delta_{i+j,-k} omega_0`.
    #[default]
    Corrected,
    /// The same term without the factor `(x, y)`.
    AsPrinted,
}

/// Central term of `[x (x) t^i [u], y (x) t^j [u]]` before the `(x, y)` factor.
pub fn monomial_cocycle(
    i: i64,
    left: Parity,
    j: i64,
    right: Parity,
    tables: &CoeffTables,
) -> Result<CentralVector> {
    let n = tables.spec().degree();
    Ok(match (left, right) {
        (Parity::Even, Parity::Even) => reduce_even_even(i, j, n),
        (Parity::Odd, Parity::Odd) => reduce_odd_odd(i, j, tables.spec()),
        (Parity::Odd, Parity::Even) => reduce_odd_even(i, j, tables)?,
        (Parity::Even, Parity::Odd) => reduce_even_odd(i, j, tables)?,
    })
}

/// Bracket context: one algebra, one curve, one variant.
pub struct LoopAlgebra<'a> {
    pub alg: &'a SimpleLieAlgebra,
    pub tables: &'a CoeffTables,
    pub variant: BracketVariant,
}

impl<'a> LoopAlgebra<'a> {
    pub fn new(alg: &'a SimpleLieAlgebra, tables: &'a CoeffTables) -> Self {
        LoopAlgebra {
            alg,
            tables,
            variant: BracketVariant::Corrected,
        }
    }

    pub fn with_variant(mut self, variant: BracketVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn spec(&self) -> &CurveSpec {
        self.tables.spec()
    }

    pub fn n(&self) -> usize {
        self.spec().degree()
    }

    pub fn zero(&self) -> LoopElement {
        LoopElement::zero(self.n())
    }

    /// Bracket of two loop elements, bilinear in both arguments. Central
    /// parts do not contribute.
    pub fn bracket(&self, x: &LoopElement, y: &LoopElement) -> Result<LoopElement> {
        let n = self.n();
        for side in [x, y] {
            if side.n() != n {
                return Err(Error::SpecMismatch {
                    left: side.n(),
                    right: n,
                });
            }
        }
        let p = self.spec().p();
        let mut out = self.zero();
        for (a, i, pa, ca) in x.terms() {
            for (b, j, pb, cb) in y.terms() {
                let coeff = ca * cb;
                let parity = pa + pb;
                let exps = if pa == Parity::Odd && pb == Parity::Odd {
                    p.shift(i + j)
                } else {
                    LaurentPoly::t_pow(i + j)
                };
                for (c, s) in self.alg.bracket_basis(a, b) {
                    let k = coeff.scale(s);
                    for (e, pc) in exps.terms() {
                        out.add_term(*c, e, parity, &k * pc);
                    }
                }
                let form = self.alg.form_basis(a, b);
                let odd_pair = pa == Parity::Odd && pb == Parity::Odd;
                let weight = match (self.variant, odd_pair) {
                    (BracketVariant::AsPrinted, true) => rat(1),
                    _ => form.clone(),
                };
                if weight == rat(0) {
                    continue;
                }
                let central = monomial_cocycle(i, pa, j, pb, self.tables)?;
                if !central.is_zero() {
                    out.central += &central.scale(&coeff.scale(&weight));
                }
            }
        }
        Ok(out)
    }

    /// `[x (x) f, y (x) g]` for ring elements `f`, `g`.
    pub fn bracket_ring(
        &self,
        a: usize,
        f: &RingElement,
        b: usize,
        g: &RingElement,
    ) -> Result<LoopElement> {
        let n = self.n();
        self.bracket(
            &LoopElement::from_ring(a, f, n),
            &LoopElement::from_ring(b, g, n),
        )
    }

    /// `[A, [B, C]] + [B, [C, A]] + [C, [A, B]]`.
    pub fn jacobiator(
        &self,
        a: &LoopElement,
        b: &LoopElement,
        c: &LoopElement,
    ) -> Result<LoopElement> {
        let t1 = self.bracket(a, &self.bracket(b, c)?)?;
        let t2 = self.bracket(b, &self.bracket(c, a)?)?;
        let t3 = self.bracket(c, &self.bracket(a, b)?)?;
        t1.add(&t2)?.add(&t3)
    }
}

/// Which monomial pairs a structure table enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityFilter {
    All,
    Pair(Parity, Parity),
}

impl ParityFilter {
    /// `all`, `even-even`, `odd-odd`, `odd-even` or `even-odd`.
    pub fn parse(s: &str) -> Result<Self> {
        let parity = |p: &str| match p {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::IndexOutOfRange(format!("parity filter `{s}`"))),
        };
        if s == "all" {
            return Ok(ParityFilter::All);
        }
        let (l, r) = s.split_once('-').ok_or_else(|| {
            Error::IndexOutOfRange(format!("parity filter `{s}` (expected e.g. odd-even)"))
        })?;
        Ok(ParityFilter::Pair(parity(l)?, parity(r)?))
    }

    fn pairs(self) -> Vec<(Parity, Parity)> {
        match self {
            ParityFilter::All => vec![
                (Parity::Even, Parity::Even),
                (Parity::Even, Parity::Odd),
                (Parity::Odd, Parity::Even),
                (Parity::Odd, Parity::Odd),
            ],
            ParityFilter::Pair(l, r) => vec![(l, r)],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Operand {
    pub x: String,
    pub exp: i64,
    pub parity: Parity,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub left: Operand,
    pub right: Operand,
    pub result: crate::lie::loop_elem::LoopRecord,
    pub display: String,
}

/// Brackets of all basis monomials `x (x) t^i [u]` with `lo <= i <= hi`, in a
/// fixed order: parities, then exponents, then basis labels.
pub fn structure_table(
    lie: &LoopAlgebra<'_>,
    lo: i64,
    hi: i64,
    filter: ParityFilter,
) -> Result<Vec<TableEntry>> {
    let n = lie.n();
    let dim = lie.alg.dim();
    let mut out = Vec::new();
    for (pl, pr) in filter.pairs() {
        for i in lo..=hi {
            for j in lo..=hi {
                for a in 0..dim {
                    for b in 0..dim {
                        let x = LoopElement::monomial(a, i, pl, ParamPoly::one(), n);
                        let y = LoopElement::monomial(b, j, pr, ParamPoly::one(), n);
                        let r = lie.bracket(&x, &y)?;
                        out.push(TableEntry {
                            left: Operand {
                                x: lie.alg.label(a).to_string(),
                                exp: i,
                                parity: pl,
                            },
                            right: Operand {
                                x: lie.alg.label(b).to_string(),
                                exp: j,
                                parity: pr,
                            },
                            result: r.to_record(lie.alg),
                            display: r.display_with(lie.alg),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_param_poly;

    fn hexic_tables() -> CoeffTables {
        CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap())
    }

    #[test]
    fn sl2_examples() {
        let g = SimpleLieAlgebra::sl2();
        let tables = hexic_tables();
        let lie = LoopAlgebra::new(&g, &tables);
        let spec = tables.spec().clone();
        let parse = |s: &str| LoopElement::parse(s, &g, &spec).unwrap();
        let r = lie.bracket(&parse("e⊗t"), &parse("f⊗t^-1")).unwrap();
        assert_eq!(r.display_with(&g), "h⊗1 - 4*omega0");
        assert!(lie
            .bracket(&parse("h⊗1"), &parse("h⊗t^5"))
            .unwrap()
            .is_zero());
        let r = lie.bracket(&parse("e⊗u"), &parse("f⊗u")).unwrap();
        assert_eq!(
            r,
            LoopElement::from_ring(1, &RingElement::even(spec.p()), 6)
        );
        let r = lie.bracket(&parse("e⊗u"), &parse("f⊗t^3")).unwrap();
        let mut central = CentralVector::basis(6, 1, parse_param_poly("6*b").unwrap());
        central += &CentralVector::basis(6, 4, ParamPoly::int(6));
        assert_eq!(r.central, central);
        assert_eq!(r.odd.get(&(1, 3)), Some(&ParamPoly::one()));
    }

    #[test]
    fn variants_differ_only_on_odd_pairs() {
        let g = SimpleLieAlgebra::sl2();
        let tables = hexic_tables();
        let fixed = LoopAlgebra::new(&g, &tables);
        let printed = LoopAlgebra::new(&g, &tables).with_variant(BracketVariant::AsPrinted);
        let spec = tables.spec().clone();
        let parse = |s: &str| LoopElement::parse(s, &g, &spec).unwrap();
        let (x, y) = (parse("e⊗t^-3*u"), parse("f⊗u"));
        let a = fixed.bracket(&x, &y).unwrap();
        let b = printed.bracket(&x, &y).unwrap();
        assert_eq!(a.central, b.central.scale(&ParamPoly::int(4)));
        let (x, y) = (parse("e⊗t^-3*u"), parse("f⊗t^2"));
        assert_eq!(
            fixed.bracket(&x, &y).unwrap(),
            printed.bracket(&x, &y).unwrap()
        );
    }

    #[test]
    fn table_entries() {
        let g = SimpleLieAlgebra::sl2();
        let tables = hexic_tables();
        let lie = LoopAlgebra::new(&g, &tables);
        assert!(structure_table(&lie, 1, 0, ParityFilter::All)
            .unwrap()
            .is_empty());
        let t = structure_table(&lie, -1, 1, ParityFilter::parse("odd-even").unwrap()).unwrap();
        assert_eq!(t.len(), 9 * 9);
        assert!(ParityFilter::parse("odd").is_err());
    }
}
