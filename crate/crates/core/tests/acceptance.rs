//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hecalg::curve::CurveSpec;
use hecalg::engine::{
    build_ode_data, default_order, integral_p_series, ode_residual_p, ode_residual_q,
    quartic_ode_residual, CoeffTables,
};
use hecalg::exact::parse::{parse_laurent, parse_param_poly};
use hecalg::exact::{ParamPoly, Rational};
use hecalg::golden;
use hecalg::kaehler::{odd_class, CentralVector, OneForm, QuotientOracle, ReductionWindow};
use hecalg::lie::{LoopAlgebra, SimpleLieAlgebra};
use hecalg::verify::{self, random, SuiteReport};
use rand::Rng;

const SEED: u64 = 20240611;
const TRIALS: usize = 200;

type Check = Result<(), String>;
/// Name, runtime limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn poly(s: &str) -> ParamPoly {
    parse_param_poly(s).unwrap()
}

fn hexic() -> CoeffTables {
    CoeffTables::new(&CurveSpec::parse(golden::HEXIC).unwrap())
}

fn quartic() -> CoeffTables {
    CoeffTables::new(&CurveSpec::parse(golden::QUARTIC).unwrap())
}

fn suite(r: hecalg::Result<SuiteReport>) -> Check {
    let r = r.map_err(|e| e.to_string())?;
    if r.passed() {
        Ok(())
    } else {
        Err(r.to_string().replace('\n', " | "))
    }
}

fn hexic_coefficients() -> Check {
    let t = hexic();
    for (k, s) in golden::HEXIC_P_MINUS_ONE {
        let got = t.p_coeff(k, -1).map_err(|e| e.to_string())?;
        if got != poly(s) {
            return Err(format!("P_({k},-1) = {got}, expected {}", poly(s)));
        }
    }
    Ok(())
}

fn series_against(
    listed: &[(i64, &str)],
    order: i64,
    coeff: impl Fn(i64) -> ParamPoly,
    route: &str,
) -> Check {
    for m in 0..order {
        let expected = listed
            .iter()
            .find(|(e, _)| *e == m)
            .map(|(_, s)| poly(s))
            .unwrap_or_default();
        let got = coeff(m);
        if got != expected {
            return Err(format!(
                "{route}: z^{m} coefficient is {got}, expected {expected}"
            ));
        }
    }
    Ok(())
}

fn quartic_series() -> Check {
    let s = quartic()
        .p
        .series(-4, golden::QUARTIC_SERIES_ORDER)
        .map_err(|e| e.to_string())?;
    series_against(
        &golden::QUARTIC_SERIES,
        golden::QUARTIC_SERIES_ORDER,
        |m| s.coeff_int(m),
        "recursion",
    )
}

fn hexic_series() -> Check {
    let t = hexic();
    let order = golden::HEXIC_SERIES_ORDER;
    let rec = t.p.series(-1, order).map_err(|e| e.to_string())?;
    let int = integral_p_series(-1, order, &t).map_err(|e| e.to_string())?;
    series_against(
        &golden::HEXIC_SERIES,
        order,
        |m| rec.coeff_int(m),
        "recursion",
    )?;
    series_against(
        &golden::HEXIC_SERIES,
        order,
        |m| int.coeff_int(m),
        "integral",
    )?;
    if rec != int {
        return Err("routes differ beyond the listed coefficients".into());
    }
    Ok(())
}

fn r_polynomials() -> Check {
    let t = hexic();
    for (i, s) in golden::HEXIC_R {
        let r = build_ode_data(i, &t).map_err(|e| e.to_string())?.r;
        if r != parse_laurent(s).unwrap() {
            return Err(format!("R_{i} = {}, expected {s}", r.display_with("z")));
        }
    }
    Ok(())
}

fn first_order_odes() -> Check {
    for t in [quartic(), hexic()] {
        let n = t.spec().degree() as i64;
        let order = default_order(t.spec().degree());
        for i in -n..=-1 {
            let p = ode_residual_p(i, order, &t).map_err(|e| e.to_string())?;
            let q = ode_residual_q(i, order, &t).map_err(|e| e.to_string())?;
            if !p.is_zero() || !q.is_zero() {
                return Err(format!("n = {n}, i = {i}: residual P {p}, Q {q}"));
            }
        }
    }
    Ok(())
}

fn quartic_fourth_order() -> Check {
    let t = quartic();
    for m in 0..=40 {
        let r = quartic_ode_residual(m, &t.p).map_err(|e| e.to_string())?;
        if !r.is_zero() {
            return Err(format!("m = {m}: residual {r}"));
        }
    }
    Ok(())
}

fn oracle_specs(rng: &mut random::TrialRng) -> Vec<CurveSpec> {
    vec![
        CurveSpec::parse(golden::QUARTIC).unwrap(),
        CurveSpec::parse(golden::HEXIC).unwrap(),
        random::separable_curve(rng, 5),
    ]
}

fn eval(
    v: &CentralVector,
    point: &std::collections::BTreeMap<String, Rational>,
) -> Result<Vec<Rational>, String> {
    v.eval(point).map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Check {
    let mut rng = random::rng(SEED);
    for spec in oracle_specs(&mut rng) {
        let t = CoeffTables::new(&spec);
        let n = spec.degree() as i64;
        for _ in 0..3 {
            let point = random::separable_point(&mut rng, &spec);
            let oracle = QuotientOracle::new(&spec, &ReductionWindow::new(5 * n, point.clone()))
                .map_err(|e| e.to_string())?;
            for _ in 0..50 {
                let k = rng.gen_range(-3 * n..=3 * n);
                let lemma = eval(&odd_class(k, &t).map_err(|e| e.to_string())?, &point)?;
                let direct = oracle
                    .reduce(&OneForm::t_u_dt(k))
                    .map_err(|e| e.to_string())?;
                let direct = eval(&direct, &point)?;
                if lemma != direct {
                    return Err(format!(
                        "p = {}, {point:?}, k = {k}: {lemma:?} vs {direct:?}",
                        spec.p()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn quotient_rank() -> Check {
    let mut rng = random::rng(SEED);
    for spec in oracle_specs(&mut rng) {
        let n = spec.degree();
        for _ in 0..3 {
            let point = random::separable_point(&mut rng, &spec);
            let oracle =
                QuotientOracle::new(&spec, &ReductionWindow::new(5 * n as i64, point.clone()))
                    .map_err(|e| e.to_string())?;
            if oracle.quotient_dim() != n + 1 {
                return Err(format!(
                    "p = {}, {point:?}: dimension {}",
                    spec.p(),
                    oracle.quotient_dim()
                ));
            }
        }
    }
    Ok(())
}

fn property_suites() -> Check {
    let t = hexic();
    suite(verify::verify_cocycle(&t, TRIALS, SEED, 6))?;
    for alg in [
        SimpleLieAlgebra::sl2(),
        SimpleLieAlgebra::sl(3).map_err(|e| e.to_string())?,
    ] {
        let lie = LoopAlgebra::new(&alg, &t);
        suite(verify::verify_jacobi(&lie, TRIALS, SEED, 6))?;
        suite(verify::verify_bracket_axioms(&lie, TRIALS, SEED, 6))?;
    }
    Ok(())
}

fn bell_layer() -> Check {
    suite(verify::verify_bell(TRIALS, SEED))
}

fn form_factor() -> Check {
    suite(verify::verify_form_factor(
        &SimpleLieAlgebra::sl2(),
        &hexic(),
        TRIALS,
        SEED,
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "hexic coefficient table P_(k,-1)",
            Some(1),
            hexic_coefficients,
        ),
        (
            "quartic generating series P_-4 through z^12",
            Some(1),
            quartic_series,
        ),
        (
            "hexic series P_-1 through z^23 by both routes",
            Some(5),
            hexic_series,
        ),
        ("hexic R polynomials", None, r_polynomials),
        (
            "first-order ODE residuals, quartic and hexic, P and Q",
            None,
            first_order_odes,
        ),
        (
            "quartic fourth-order ODE in c for m <= 40",
            Some(30),
            quartic_fourth_order,
        ),
        (
            "lemma reductions agree with linear algebra",
            Some(60),
            oracle_equivalence,
        ),
        ("quotient dimension n+1", None, quotient_rank),
        (
            "cocycle, Jacobi and bracket property suites",
            None,
            property_suites,
        ),
        ("Bell polynomial layer", None, bell_layer),
        ("form factor needed on odd pairs", None, form_factor),
    ];
    let mut failures = 0;
    for (idx, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if result.is_ok() && elapsed > Duration::from_secs(*secs) {
                result = Err(format!("took {elapsed:.2?}, limit {secs} s"));
            }
        }
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", idx + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {why}", idx + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
