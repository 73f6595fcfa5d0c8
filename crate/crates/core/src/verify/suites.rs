use std::collections::BTreeMap;

use rand::Rng;

use crate::curve::{ring_mul, CurveSpec};
use crate::engine::bell::{faa_series, neg_three_halves_deriv, pbar_taylor, sqrt_deriv};
use crate::engine::quartic::{quartic_ode_residual, quartic_parameter};
use crate::engine::{
    bell, integral_p_series, integral_q_series, ode_residual_p, ode_residual_q, CoeffTables,
};
use crate::error::Result;
use crate::exact::{Exponent, HalfGridSeries, ParamPoly, Rational};
use crate::kaehler::{cocycle, odd_class, CentralVector, OneForm, QuotientOracle, ReductionWindow};
use crate::lie::{BracketVariant, LoopAlgebra, LoopElement, SimpleLieAlgebra};
use crate::verify::random;
use crate::verify::SuiteReport;

/// `[A,[B,C]] + cyclic = 0` on random homogeneous triples with exponents in
/// `[-window, window]`.
pub fn verify_jacobi(
    lie: &LoopAlgebra<'_>,
    trials: usize,
    seed: u64,
    window: i64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("jacobi");
    let mut rng = random::rng(seed);
    let (dim, n) = (lie.alg.dim(), lie.n());
    for trial in 0..trials {
        let triple: Vec<LoopElement> = (0..3)
            .map(|_| {
                let p = random::parity(&mut rng);
                let mut x = random::loop_element(&mut rng, dim, n, window, p);
                if rng.gen_bool(0.1) {
                    x.central += &CentralVector::basis(n, rng.gen_range(0..=n), ParamPoly::one());
                }
                x
            })
            .collect();
        let jac = lie.jacobiator(&triple[0], &triple[1], &triple[2])?;
        report.record(jac.is_zero(), || {
            format!(
                "trial {trial}: A = {}, B = {}, C = {} gives {}",
                triple[0].display_with(lie.alg),
                triple[1].display_with(lie.alg),
                triple[2].display_with(lie.alg),
                jac.display_with(lie.alg)
            )
        });
    }
    Ok(report)
}

/// Antisymmetry, grading and the projection to the plain current algebra.
pub fn verify_bracket_axioms(
    lie: &LoopAlgebra<'_>,
    trials: usize,
    seed: u64,
    window: i64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bracket");
    let mut rng = random::rng(seed);
    let (dim, n) = (lie.alg.dim(), lie.n());
    let spec = lie.spec().clone();
    for trial in 0..trials {
        let (p, q) = (random::parity(&mut rng), random::parity(&mut rng));
        let x = random::loop_element(&mut rng, dim, n, window, p);
        let y = random::loop_element(&mut rng, dim, n, window, q);
        let xy = lie.bracket(&x, &y)?;
        let yx = lie.bracket(&y, &x)?;
        report.record(xy.add(&yx)?.is_zero(), || {
            format!(
                "trial {trial}: [A,B] + [B,A] != 0 for A = {}, B = {}",
                x.display_with(lie.alg),
                y.display_with(lie.alg)
            )
        });
        let graded = xy.is_zero() || xy.parity() == Some(p + q);
        report.record(graded, || {
            format!(
                "trial {trial}: bracket of parities {p}, {q} is {}",
                xy.display_with(lie.alg)
            )
        });

        let (a, b) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        let f = random::ring_element(&mut rng, window, 2, None);
        let g = random::ring_element(&mut rng, window, 2, None);
        let full = lie.bracket_ring(a, &f, b, &g)?;
        let fg = ring_mul(&f, &g, &spec);
        let mut expected = LoopElement::zero(n);
        for (c, s) in lie.alg.bracket_basis(a, b) {
            expected = expected
                .add(&LoopElement::from_ring(*c, &fg, n).scale(&ParamPoly::constant(s.clone())))?;
        }
        report.record(full.noncentral() == expected, || {
            format!("trial {trial}: noncentral part of [x (x) {f}, y (x) {g}] differs from [x,y] (x) fg")
        });
    }
    Ok(report)
}

/// Evidence for the odd-odd central term: the corrected bracket satisfies
/// Jacobi, the printed one (without the invariant form) does not.
pub fn verify_form_factor(
    alg: &SimpleLieAlgebra,
    tables: &CoeffTables,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("form-factor");
    let corrected = LoopAlgebra::new(alg, tables);
    let fixed = verify_jacobi(&corrected, trials, seed, 3)?;
    report.record(fixed.passed(), || {
        "corrected bracket violates Jacobi".to_string()
    });
    let printed = LoopAlgebra::new(alg, tables).with_variant(BracketVariant::AsPrinted);
    let broken = verify_jacobi(&printed, trials, seed, 3)?;
    match broken.failures.first() {
        Some(example) => {
            report.record(true, String::new);
            report.note(format!("without the form factor: {example}"));
        }
        None => report.record(false, || {
            "bracket without the form factor passed every trial".to_string()
        }),
    }
    Ok(report)
}

/// Skew symmetry and the cyclic identity of `(f, g) -> class(f dg)`.
pub fn verify_cocycle(
    tables: &CoeffTables,
    trials: usize,
    seed: u64,
    window: i64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cocycle");
    let mut rng = random::rng(seed);
    let spec = tables.spec().clone();
    for trial in 0..trials {
        let f = random::ring_element(&mut rng, window, 3, None);
        let g = random::ring_element(&mut rng, window, 3, None);
        let h = random::ring_element(&mut rng, window, 3, None);
        let skew = &cocycle(&f, &g, tables)? + &cocycle(&g, &f, tables)?;
        report.record(skew.is_zero(), || {
            format!("trial {trial}: c({f}, {g}) + c({g}, {f}) = {skew}")
        });
        let fg = ring_mul(&f, &g, &spec);
        let gh = ring_mul(&g, &h, &spec);
        let hf = ring_mul(&h, &f, &spec);
        let mut cyc = cocycle(&fg, &h, tables)?;
        cyc += &cocycle(&gh, &f, tables)?;
        cyc += &cocycle(&hf, &g, tables)?;
        report.record(cyc.is_zero(), || {
            format!("trial {trial}: cyclic sum for f = {f}, g = {g}, h = {h} is {cyc}")
        });
    }
    Ok(report)
}

/// First-order ODE residuals for every index, plus the fourth-order ODE in
/// `c` when the curve is the quartic `t^4 - 2c t^2 + 1`.
pub fn verify_ode(tables: &CoeffTables, order: i64, quartic_max_m: i64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ode");
    let n = tables.spec().degree() as i64;
    for i in -n..=-1 {
        let r = ode_residual_p(i, order, tables)?;
        report.record(r.is_zero(), || {
            format!("P-family residual for i = {i} is nonzero below z^{order}")
        });
        if tables.q().is_ok() {
            let r = ode_residual_q(i, order, tables)?;
            report.record(r.is_zero(), || {
                format!("Q-family residual for i = {i} is nonzero below z^{order}")
            });
        }
    }
    if quartic_parameter(tables.spec()).is_ok() {
        for m in 0..=quartic_max_m {
            let r = quartic_ode_residual(m, &tables.p)?;
            report.record(r.is_zero(), || {
                format!("fourth-order residual at m = {m} is {r}")
            });
        }
    }
    Ok(report)
}

/// Recursion route against the integrating-factor route for every index.
pub fn verify_routes(tables: &CoeffTables, order: i64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("routes");
    let n = tables.spec().degree() as i64;
    for i in -n..=-1 {
        let a = tables.p.series(i, order)?;
        let b = integral_p_series(i, order, tables)?;
        report.record(a == b, || format!("P_{i} routes disagree below z^{order}"));
        if let Ok(q) = tables.q() {
            let a = q.series(i, order)?;
            let b = integral_q_series(i, order, tables)?;
            report.record(a == b, || format!("Q_{i} routes disagree below z^{order}"));
        }
    }
    Ok(report)
}

/// Lemma reductions against the linear-algebra oracle at random rational
/// points, together with the quotient dimension.
pub fn verify_oracle(
    tables: &CoeffTables,
    instantiations: usize,
    monomials: usize,
    seed: u64,
    window: Option<i64>,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle");
    let mut rng = random::rng(seed);
    let spec = tables.spec().clone();
    let n = spec.degree();
    let ni = n as i64;
    let bound = window.unwrap_or(5 * ni);
    for inst in 0..instantiations {
        let point = random::separable_point(&mut rng, &spec);
        let oracle = QuotientOracle::new(&spec, &ReductionWindow::new(bound, point.clone()))?;
        report.record(oracle.quotient_dim() == n + 1, || {
            format!(
                "instantiation {inst}: quotient dimension {} instead of {}",
                oracle.quotient_dim(),
                n + 1
            )
        });
        if inst == 0 {
            for m in 1..=ni {
                let v = oracle.reduce(&OneForm::t_u_dt(-m))?;
                report.record(
                    v == CentralVector::basis(n, m as usize, ParamPoly::one()),
                    || format!("t^-{m} u dt reduces to {v}, not omega_{m}"),
                );
            }
            report.note(format!(
                "t^-m u dt = omega_m for 1 <= m <= {n}: the initial values are P_(k,i) = delta_(k,i) on -{n} <= k <= -1"
            ));
        }
        for _ in 0..monomials {
            let k = rng.gen_range(-3 * ni..=3 * ni);
            let lemma = eval(&odd_class(k, tables)?, &point)?;
            let direct = oracle.reduce(&OneForm::t_u_dt(k))?;
            report.record(lemma == direct, || {
                format!("instantiation {inst} {}: t^{k} u dt gives {lemma} by the lemmas, {direct} by elimination", show(&point))
            });
        }
        for _ in 0..monomials / 5 {
            let f = random::ring_element(&mut rng, ni, 2, None);
            let g = random::ring_element(&mut rng, ni, 2, None);
            let lemma = eval(&cocycle(&f, &g, tables)?, &point)?;
            let form = OneForm::new(f.clone(), g.clone());
            let direct = oracle.reduce(&form)?;
            report.record(lemma == direct, || {
                format!("instantiation {inst} {}: ({f}) d({g}) gives {lemma} by the lemmas, {direct} by elimination", show(&point))
            });
        }
    }
    Ok(report)
}

fn eval(v: &CentralVector, point: &BTreeMap<String, Rational>) -> Result<CentralVector> {
    Ok(CentralVector::from_coords(
        v.eval(point)?
            .into_iter()
            .map(ParamPoly::constant)
            .collect(),
    ))
}

fn show(point: &BTreeMap<String, Rational>) -> String {
    let parts: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("[{}]", parts.join(", "))
}

/// All set partitions of `{0..n-1}` as block-size lists.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += 1;
            go(i + 1, n, blocks, out);
            blocks[b] -= 1;
        }
        blocks.push(1);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Bell recurrence against partition enumeration, Bell numbers, and the
/// Faa di Bruno expansions of `sqrt(Pbar)` and `Pbar^(-3/2)` on random curves.
pub fn verify_bell(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bell");
    let z: Vec<ParamPoly> = (1..=8).map(|k| ParamPoly::var(&format!("z{k}"))).collect();
    let ones = vec![ParamPoly::one(); 8];
    const BELL: [i64; 9] = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    for (nn, &bell_number) in BELL.iter().enumerate() {
        let parts = set_partitions(nn);
        for k in 0..=nn {
            let mut enumerated = ParamPoly::zero();
            for blocks in parts.iter().filter(|b| b.len() == k) {
                let mut term = ParamPoly::one();
                for &size in blocks {
                    term = &term * &z[size - 1];
                }
                enumerated += &term;
            }
            let rec = bell(nn, k, &z);
            report.record(rec == enumerated, || {
                format!("B_({nn},{k}) = {rec} but partitions give {enumerated}")
            });
        }
        let total: ParamPoly = (0..=nn).map(|k| bell(nn, k, &ones)).sum();
        report.record(total == ParamPoly::int(bell_number), || {
            format!("sum_k B_({nn},k)(1,...,1) = {total}, expected {bell_number}")
        });
    }

    let mut rng = random::rng(seed);
    let mut specs = vec![
        CurveSpec::parse("t^4 - 2*c*t^2 + 1")?,
        CurveSpec::parse("t^6 - 2*b*t^3 + 1")?,
    ];
    for _ in 0..trials {
        let n = rng.gen_range(1..=7);
        specs.push(random::separable_curve(&mut rng, n));
    }
    for spec in &specs {
        check_root_identities(spec, &mut report)?;
    }
    Ok(report)
}

fn check_root_identities(spec: &CurveSpec, report: &mut SuiteReport) -> Result<()> {
    let order = 2 * spec.degree() + 8;
    let inner = pbar_taylor(spec);
    let pbar = HalfGridSeries::from_terms(
        inner
            .iter()
            .enumerate()
            .map(|(k, c)| (Exponent::int(k as i64), c.clone())),
        Exponent::int(order as i64),
    );
    let root = faa_series(sqrt_deriv, &inner, order);
    let neg32 = faa_series(neg_three_halves_deriv, &inner, order);
    report.record(&root * &root == pbar, || {
        format!("(sqrt Pbar)^2 != Pbar for p = {spec}")
    });
    let one = &(&(&root * &root) * &root) * &neg32;
    report.record(
        one == HalfGridSeries::one(Exponent::int(order as i64)),
        || format!("(sqrt Pbar)^3 Pbar^(-3/2) != 1 for p = {spec}"),
    );
    report.record(pbar.sqrt_newton()? == root, || {
        format!("Newton square root differs from Faa di Bruno for p = {spec}")
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexic() -> CoeffTables {
        CoeffTables::new(&CurveSpec::parse("t^6 - 2*b*t^3 + 1").unwrap())
    }

    #[test]
    fn partitions_count() {
        let sizes: Vec<usize> = (0..=6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn small_runs_pass() {
        let tables = hexic();
        let g = SimpleLieAlgebra::sl2();
        let lie = LoopAlgebra::new(&g, &tables);
        for report in [
            verify_jacobi(&lie, 10, 1, 2).unwrap(),
            verify_bracket_axioms(&lie, 10, 1, 2).unwrap(),
            verify_cocycle(&tables, 10, 1, 4).unwrap(),
            verify_oracle(&tables, 1, 10, 1, None).unwrap(),
            verify_routes(&tables, 16).unwrap(),
            verify_ode(&tables, 16, 0).unwrap(),
            verify_bell(2, 1).unwrap(),
        ] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn printed_variant_is_caught() {
        let tables = hexic();
        let report = verify_form_factor(&SimpleLieAlgebra::sl2(), &tables, 40, 3).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.notes.len(), 1);
    }

    #[test]
    fn deterministic_under_seed() {
        let tables = hexic();
        let a = verify_cocycle(&tables, 5, 9, 3).unwrap();
        let b = verify_cocycle(&tables, 5, 9, 3).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}
