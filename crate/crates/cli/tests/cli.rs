use std::process::{Command, Output};

const HEXIC: &str = "t^6 - 2*b*t^3 + 1";
const QUARTIC: &str = "t^4 - 2*c*t^2 + 1";

fn hecalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn basis_lists_n_plus_one_forms() {
    let out = hecalg(&["basis", "--curve", HEXIC]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("omega0 = t^-1 dt\nomega1 = t^-1*u dt\n"));
    assert!(text.contains("omega6 = t^-6*u dt"));

    let out = hecalg(&["basis", "--curve", "t^2-2*b*t+1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn invalid_curve_is_a_usage_error() {
    let out = hecalg(&["basis", "--curve", "t^3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a0"));
}

#[test]
fn missing_curve_and_bad_flags_exit_two() {
    assert_eq!(hecalg(&["basis"]).status.code(), Some(2));
    assert_eq!(
        hecalg(&["verify", "--trials", "0", "--curve", HEXIC])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hecalg(&["coeffs", "--curve", HEXIC, "--order", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hecalg(&["series", "--curve", HEXIC, "--index", "-7"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn series_json_with_both_routes() {
    let out = hecalg(&[
        "series",
        "--curve",
        HEXIC,
        "--index",
        "-1",
        "--order",
        "23",
        "--both-routes",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["routes_agree"], true);
    let terms = v["recursion"].as_array().unwrap();
    let last = terms.last().unwrap();
    assert_eq!(last["exponent"], "23");
    assert_eq!(last["coefficient"], "33/16*b^6 - 15/8*b^4 + 5/16*b^2");
}

#[test]
fn q_series_has_half_at_z13() {
    let out = hecalg(&[
        "series", "--curve", HEXIC, "--family", "q", "--index", "-1", "--order", "13", "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("13,1/2"));
}

#[test]
fn bracket_examples() {
    let out = hecalg(&["bracket", "--curve", HEXIC, "e⊗t", "f@t^-1"]);
    assert_eq!(stdout(&out), "h⊗1 - 4*omega0\n");
    let out = hecalg(&["bracket", "--curve", HEXIC, "h⊗1", "h⊗t^5"]);
    assert_eq!(stdout(&out), "0\n");
    let out = hecalg(&["bracket", "--curve", HEXIC, "e⊗u", "f⊗t^3"]);
    assert_eq!(stdout(&out), "h⊗t^3*u + 6*b*omega1 + 6*omega4\n");
}

#[test]
fn parse_errors_show_a_caret() {
    let out = hecalg(&["bracket", "--curve", HEXIC, "e⊗t^^2", "f⊗t"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('^') && err.contains("e⊗t^^2"), "{err}");
}

#[test]
fn reduce_by_formula_and_by_oracle_agree() {
    let lemma = hecalg(&["reduce", "--curve", HEXIC, "t^2*u dt", "--at", "b=2"]);
    let oracle = hecalg(&[
        "reduce", "--curve", HEXIC, "t^2*u dt", "--oracle", "--at", "b=2",
    ]);
    assert_eq!(stdout(&lemma), "omega1 + 1/2*omega4\n");
    assert_eq!(stdout(&lemma), stdout(&oracle));
    let unbound = hecalg(&["reduce", "--curve", HEXIC, "t^2*u dt", "--oracle"]);
    assert_eq!(unbound.status.code(), Some(2));
}

#[test]
fn table_csv_rows() {
    let out = hecalg(&[
        "table", "--curve", HEXIC, "--lo", "0", "--hi", "0", "--parity", "odd-odd", "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 9);
    assert!(text.contains("e⊗u,f⊗u,h⊗1 - 2*b*h⊗t^3 + h⊗t^6"));
}

#[test]
fn verify_is_deterministic_and_exits_zero() {
    let args = [
        "verify", "--curve", HEXIC, "--suite", "jacobi", "--trials", "30", "--seed", "7",
    ];
    let a = hecalg(&args);
    let b = hecalg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS jacobi: 30/30"));
}

#[test]
fn worked_examples_hexic_matches_and_quartic_reports_the_sign_difference() {
    let out = hecalg(&["paper", "hexic"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("59 of 59 values match\n"));

    let out = hecalg(&["paper", "quartic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let bad: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["ok"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["name"], "P_-4 (recursion) [z^12]");
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("hecalg-out-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = hecalg(&["coeffs", "--curve", QUARTIC, "--order", "2", "--out", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("k,i,polynomial\n-4,-4,1\n"));
    assert_eq!(text.lines().count(), 1 + 7 * 4);
}

#[test]
fn custom_algebra_from_file() {
    let path = std::env::temp_dir().join(format!("hecalg-alg-{}.csv", std::process::id()));
    std::fs::write(
        &path,
        "i,j,k,c\n0,2,1,1\n2,0,1,-1\n1,0,0,2\n0,1,0,-2\n1,2,2,-2\n2,1,2,2\n",
    )
    .unwrap();
    let sel = format!("file:{}", path.display());
    let out = hecalg(&[
        "bracket",
        "--curve",
        HEXIC,
        "--algebra",
        &sel,
        "x0@t",
        "x2@t^-1",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout(&out), "x1⊗1 - 4*omega0\n");
}
