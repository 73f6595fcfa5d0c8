use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hecalg::curve::{CurveSpec, Parity};
use hecalg::engine::{default_order, integral_p_series, integral_q_series, CoeffTables};
use hecalg::exact::parse::parse_param_poly;
use hecalg::exact::{HalfGridSeries, Rational, SeriesTerm};
use hecalg::golden::{self, GoldenLine};
use hecalg::kaehler::{cocycle, normalize, OneForm, QuotientOracle, ReductionWindow};
use hecalg::lie::{
    structure_table, BracketVariant, LoopAlgebra, LoopElement, ParityFilter, SimpleLieAlgebra,
};
use hecalg::verify::{self, SuiteReport};
use hecalg::Error;

/// Exact computations in the universal central extension of
/// `g (x) C[t, t^-1, u | u^2 = p(t)]`.
#[derive(Parser, Debug)]
#[command(name = "hecalg", version, about)]
struct Cli {
    /// The polynomial p(t), e.g. "t^6 - 2*b*t^3 + 1".
    #[arg(long, global = true)]
    curve: Option<String>,
    /// sl2, slN:k, slk or file:path (CSV rows i,j,k,c).
    #[arg(long, global = true, default_value = "sl2")]
    algebra: String,
    /// Truncation order (highest exponent or table index).
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    order: Option<i64>,
    /// Exponent bound of the linear-algebra reduction window.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    window: Option<i64>,
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    P,
    Q,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Jacobi,
    Cocycle,
    Ode,
    Oracle,
    Bell,
    Routes,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    Quartic,
    Hexic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the basis omega_0..omega_n of the central part.
    Basis,
    /// Generating series P_i or Q_i through z^order.
    Series {
        #[arg(long, value_enum, default_value_t = Family::P)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        /// Also compute the integrating-factor route and compare.
        #[arg(long)]
        both_routes: bool,
    },
    /// Coefficient table (k, i, polynomial) for every i in [-n, -1].
    Coeffs {
        #[arg(long, value_enum, default_value_t = Family::P)]
        family: Family,
    },
    /// Bracket of two loop-algebra elements, e.g. "e⊗t^2*u" "f@t^-1".
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        /// Omit the invariant form on pairs of odd elements.
        #[arg(long)]
        as_printed: bool,
    },
    /// Class of a 1-form in the canonical basis, e.g. "t^3*u dt".
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Reduce by exact linear algebra instead of the closed formulas.
        #[arg(long)]
        oracle: bool,
        /// Parameter values, e.g. "b=2,c=1/3".
        #[arg(long)]
        at: Option<String>,
    },
    /// Brackets of all basis monomials with exponents in [lo, hi].
    Table {
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        hi: i64,
        /// all, even-even, even-odd, odd-even or odd-odd.
        #[arg(long, default_value = "all")]
        parity: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Recompute the worked examples and compare against the reference values.
    Paper {
        #[arg(value_enum)]
        example: Example,
    },
}

/// A usage or parse error; exits with status 2.
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut verdict = ExitCode::SUCCESS;
    let text = match run(&cli, &mut verdict) {
        Ok(text) => text,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{path}: {e}")),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    verdict
}

fn run(cli: &Cli, verdict: &mut ExitCode) -> Outcome {
    let mut failed = false;
    let text = match &cli.command {
        Command::Basis => cmd_basis(cli)?,
        Command::Series {
            family,
            index,
            both_routes,
        } => cmd_series(cli, *family, *index, *both_routes, &mut failed)?,
        Command::Coeffs { family } => cmd_coeffs(cli, *family)?,
        Command::Bracket {
            left,
            right,
            as_printed,
        } => cmd_bracket(cli, left, right, *as_printed)?,
        Command::Reduce { form, oracle, at } => cmd_reduce(cli, form, *oracle, at.as_deref())?,
        Command::Table { lo, hi, parity } => cmd_table(cli, *lo, *hi, parity)?,
        Command::Verify { suite } => cmd_verify(cli, *suite, &mut failed)?,
        Command::Paper { example } => cmd_paper(cli, *example, &mut failed)?,
    };
    if failed {
        *verdict = ExitCode::from(1);
    }
    Ok(text)
}

fn curve(cli: &Cli) -> Result<CurveSpec, Failure> {
    let src = cli
        .curve
        .as_deref()
        .ok_or_else(|| Failure::Usage("--curve is required for this command".into()))?;
    Ok(CurveSpec::parse(src)?)
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn cmd_basis(cli: &Cli) -> Outcome {
    let n = curve(cli)?.degree();
    let mut rows = vec![("omega0".to_string(), "t^-1 dt".to_string())];
    rows.extend((1..=n).map(|k| (format!("omega{k}"), format!("t^-{k}*u dt"))));
    Ok(match cli.format {
        Format::Json => {
            let list: Vec<BTreeMap<&str, &str>> = rows
                .iter()
                .map(|(a, b)| BTreeMap::from([("name", a.as_str()), ("form", b.as_str())]))
                .collect();
            json(&list)
        }
        Format::Csv => csv(&["name", "form"], rows.into_iter().map(|(a, b)| vec![a, b])),
        Format::Text => rows.iter().map(|(a, b)| format!("{a} = {b}\n")).collect(),
    })
}

#[derive(Serialize)]
struct SeriesDump {
    family: &'static str,
    index: i64,
    order: i64,
    recursion: Vec<SeriesTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integral: Option<Vec<SeriesTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    routes_agree: Option<bool>,
}

fn cmd_series(cli: &Cli, family: Family, index: i64, both: bool, failed: &mut bool) -> Outcome {
    let spec = curve(cli)?;
    let tables = CoeffTables::new(&spec);
    let order = cli.order.unwrap_or_else(|| default_order(spec.degree())) + 1;
    let (name, recursion, integral): (_, HalfGridSeries, Option<HalfGridSeries>) = match family {
        Family::P => (
            "P",
            tables.p.series(index, order)?,
            if both {
                Some(integral_p_series(index, order, &tables)?)
            } else {
                None
            },
        ),
        Family::Q => (
            "Q",
            tables.q()?.series(index, order)?,
            if both {
                Some(integral_q_series(index, order, &tables)?)
            } else {
                None
            },
        ),
    };
    let agree = integral.as_ref().map(|s| *s == recursion);
    if agree == Some(false) {
        *failed = true;
    }
    Ok(match cli.format {
        Format::Json => json(&SeriesDump {
            family: name,
            index,
            order: order - 1,
            recursion: recursion.to_records(),
            integral: integral.as_ref().map(|s| s.to_records()),
            routes_agree: agree,
        }),
        Format::Csv => {
            let rows = recursion
                .to_records()
                .into_iter()
                .map(|t| vec![t.exponent, t.coefficient]);
            let mut out = csv(&["exponent", "coefficient"], rows);
            if let Some(a) = agree {
                out.push_str(&format!("# routes agree: {a}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{name}_{index}(z) = {recursion}\n");
            if let (Some(s), Some(a)) = (&integral, agree) {
                out.push_str(&format!("integral route: {s}\nroutes agree: {a}\n"));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct CoeffRow {
    k: i64,
    i: i64,
    polynomial: String,
}

fn cmd_coeffs(cli: &Cli, family: Family) -> Outcome {
    let spec = curve(cli)?;
    let tables = CoeffTables::new(&spec);
    let n = spec.degree() as i64;
    let top = cli.order.unwrap_or_else(|| default_order(spec.degree()));
    let mut rows = Vec::new();
    let first = match family {
        Family::P => -n,
        Family::Q => 1,
    };
    for k in first..=top {
        for i in -n..=-1 {
            let c = match family {
                Family::P => tables.p_coeff(k, i)?,
                Family::Q => tables.q_coeff(k, i)?,
            };
            rows.push(CoeffRow {
                k,
                i,
                polynomial: c.to_string(),
            });
        }
    }
    Ok(match cli.format {
        Format::Json => json(&rows),
        _ => csv(
            &["k", "i", "polynomial"],
            rows.into_iter()
                .map(|r| vec![r.k.to_string(), r.i.to_string(), r.polynomial]),
        ),
    })
}

fn cmd_bracket(cli: &Cli, left: &str, right: &str, as_printed: bool) -> Outcome {
    let spec = curve(cli)?;
    let alg = SimpleLieAlgebra::from_selector(&cli.algebra)?;
    let tables = CoeffTables::new(&spec);
    let variant = if as_printed {
        BracketVariant::AsPrinted
    } else {
        BracketVariant::Corrected
    };
    let lie = LoopAlgebra::new(&alg, &tables).with_variant(variant);
    let x = LoopElement::parse(left, &alg, &spec)?;
    let y = LoopElement::parse(right, &alg, &spec)?;
    let r = lie.bracket(&x, &y)?;
    Ok(match cli.format {
        Format::Json => json(&r.to_record(&alg)),
        Format::Csv => {
            let rec = r.to_record(&alg);
            let mut rows: Vec<Vec<String>> = rec
                .terms
                .into_iter()
                .map(|t| {
                    vec![
                        t.x,
                        t.exp.to_string(),
                        parity_name(t.parity).into(),
                        t.coefficient,
                    ]
                })
                .collect();
            for (k, c) in r.central.coords().iter().enumerate() {
                if !c.is_zero() {
                    rows.push(vec![
                        format!("omega{k}"),
                        String::new(),
                        String::new(),
                        c.to_string(),
                    ]);
                }
            }
            csv(&["x", "exp", "parity", "coefficient"], rows)
        }
        Format::Text => format!("{}\n", r.display_with(&alg)),
    })
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn parse_point(at: Option<&str>) -> Result<BTreeMap<String, Rational>, Failure> {
    let mut point = BTreeMap::new();
    let Some(at) = at else { return Ok(point) };
    for binding in at.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = binding
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding `{binding}` is not name=value")))?;
        let v = parse_param_poly(value.trim()).map_err(Error::from)?;
        let v = v.as_constant().ok_or_else(|| {
            Failure::Usage(format!(
                "value of `{}` must be a rational number",
                name.trim()
            ))
        })?;
        point.insert(name.trim().to_string(), v);
    }
    Ok(point)
}

fn cmd_reduce(cli: &Cli, form: &str, oracle: bool, at: Option<&str>) -> Outcome {
    let spec = curve(cli)?;
    let form = OneForm::parse(form, &spec)?;
    let point = parse_point(at)?;
    let v = if oracle {
        let bound = match cli.window {
            Some(w) => w,
            None => {
                let reach = normalize(&form, &spec)?
                    .exponent_range()
                    .map_or(0, |(lo, hi)| lo.abs().max(hi.abs()));
                ReductionWindow::default_bound(spec.degree(), reach)
            }
        };
        QuotientOracle::new(&spec, &ReductionWindow::new(bound, point))?.reduce(&form)?
    } else {
        let tables = CoeffTables::new(&spec);
        let v = cocycle(&form.f, &form.g, &tables)?;
        if point.is_empty() {
            v
        } else {
            v.eval_partial(&point)
        }
    };
    Ok(match cli.format {
        Format::Json => json(&v),
        Format::Csv => csv(
            &["basis", "coefficient"],
            v.coords()
                .iter()
                .enumerate()
                .map(|(k, c)| vec![format!("omega{k}"), c.to_string()]),
        ),
        Format::Text => format!("{v}\n"),
    })
}

fn operand(x: &str, exp: i64, p: Parity) -> String {
    let mono = match (p, exp) {
        (Parity::Even, 0) => "1".to_string(),
        (Parity::Even, e) => format!("t^{e}"),
        (Parity::Odd, 0) => "u".to_string(),
        (Parity::Odd, e) => format!("t^{e}*u"),
    };
    format!("{x}⊗{mono}")
}

fn cmd_table(cli: &Cli, lo: i64, hi: i64, parity: &str) -> Outcome {
    let spec = curve(cli)?;
    let alg = SimpleLieAlgebra::from_selector(&cli.algebra)?;
    let tables = CoeffTables::new(&spec);
    let lie = LoopAlgebra::new(&alg, &tables);
    if lo > hi {
        return Err(Failure::Usage(format!("empty exponent range [{lo}, {hi}]")));
    }
    let entries = structure_table(&lie, lo, hi, ParityFilter::parse(parity)?)?;
    Ok(match cli.format {
        Format::Json => json(&entries),
        Format::Csv => csv(
            &["left", "right", "bracket"],
            entries.iter().map(|e| {
                vec![
                    operand(&e.left.x, e.left.exp, e.left.parity),
                    operand(&e.right.x, e.right.exp, e.right.parity),
                    e.display.clone(),
                ]
            }),
        ),
        Format::Text => entries
            .iter()
            .map(|e| {
                format!(
                    "[{}, {}] = {}\n",
                    operand(&e.left.x, e.left.exp, e.left.parity),
                    operand(&e.right.x, e.right.exp, e.right.parity),
                    e.display
                )
            })
            .collect(),
    })
}

const QUARTIC_MAX_M: i64 = 40;

fn cmd_verify(cli: &Cli, suite: Suite, failed: &mut bool) -> Outcome {
    let trials = cli.trials as usize;
    let seed = cli.seed;
    let needs_curve = suite != Suite::Bell;
    let spec = if needs_curve { Some(curve(cli)?) } else { None };
    let tables = spec.as_ref().map(CoeffTables::new);
    let alg = SimpleLieAlgebra::from_selector(&cli.algebra)?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    let run = |s: Suite| suite == Suite::All || suite == s;
    if let Some(tables) = &tables {
        let n = tables.spec().degree();
        let spread = n as i64;
        let order = cli.order.unwrap_or_else(|| default_order(n));
        if run(Suite::Jacobi) {
            let lie = LoopAlgebra::new(&alg, tables);
            reports.push(verify::verify_jacobi(&lie, trials, seed, spread)?);
            reports.push(verify::verify_bracket_axioms(&lie, trials, seed, spread)?);
            reports.push(verify::verify_form_factor(&alg, tables, trials, seed)?);
        }
        if run(Suite::Cocycle) {
            reports.push(verify::verify_cocycle(tables, trials, seed, spread)?);
        }
        if run(Suite::Ode) {
            reports.push(verify::verify_ode(tables, order, QUARTIC_MAX_M)?);
        }
        if run(Suite::Oracle) {
            reports.push(verify::verify_oracle(tables, 3, trials, seed, cli.window)?);
        }
        if run(Suite::Routes) {
            reports.push(verify::verify_routes(tables, order)?);
        }
    }
    if run(Suite::Bell) {
        reports.push(verify::verify_bell(trials, seed)?);
    }
    *failed = reports.iter().any(|r| !r.passed());
    Ok(match cli.format {
        Format::Json => json(&reports),
        Format::Csv => csv(
            &["suite", "checks", "failed", "verdict"],
            reports.iter().map(|r| {
                vec![
                    r.suite.clone(),
                    r.checks.to_string(),
                    r.failed.to_string(),
                    if r.passed() { "PASS" } else { "FAIL" }.to_string(),
                ]
            }),
        ),
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
    })
}

fn cmd_paper(cli: &Cli, example: Example, failed: &mut bool) -> Outcome {
    let lines: Vec<GoldenLine> = match example {
        Example::Quartic => golden::quartic_report(QUARTIC_MAX_M)?,
        Example::Hexic => golden::hexic_report()?,
    };
    *failed = lines.iter().any(|l| !l.ok);
    Ok(match cli.format {
        Format::Json => json(&lines),
        Format::Csv => csv(
            &["name", "expected", "computed", "ok"],
            lines.iter().map(|l| {
                vec![
                    l.name.clone(),
                    l.expected.clone(),
                    l.computed.clone(),
                    l.ok.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for l in &lines {
                if l.ok {
                    out.push_str(&format!("ok       {} = {}\n", l.name, l.computed));
                } else {
                    out.push_str(&format!(
                        "MISMATCH {}\n  - expected {}\n  + computed {}\n",
                        l.name, l.expected, l.computed
                    ));
                }
            }
            let bad = lines.iter().filter(|l| !l.ok).count();
            out.push_str(&format!(
                "{} of {} values match\n",
                lines.len() - bad,
                lines.len()
            ));
            out
        }
    })
}
