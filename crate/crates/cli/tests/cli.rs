use std::process::{Command, Output};

fn chazy(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chazy"));
    c.args(args).env_remove("CHAZY_SEED").env_remove("CHAZY_PRECISION");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_table() {
    let o = chazy(&["classify"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for id in ["Xplus", "Xminus", "IX", "XI", "XII", "IV", "V", "VI", "VII", "VIII", "II", "XI(k=1)", "XII(k=inf)"] {
        assert!(s.lines().any(|l| l.split_whitespace().nth(3) == Some(id)), "{id}");
    }
    assert!(s.contains("eigenvalues -1, 3, 3, not diagonalizable"));
    assert!(s.contains("eigenvalues -6, -1, -1, not diagonalizable"));
    assert!(s.contains("[0, 6/5, -2]"));
    assert!(s.contains("φ''' = 11(φ')² - 7φφ''"));
    assert!(s.lines().any(|l| l.starts_with("4 ") && l.contains("inconclusive")));
}

#[test]
fn classify_json_lines_parse() {
    let o = chazy(&["classify", "--json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let accepted = rows.iter().filter(|r| r["status"] == "accepted").count();
    assert_eq!(accepted, 11);
    let back: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
    assert_eq!(back.join("\n") + "\n", stdout(&o));
}

#[test]
fn xiii_is_a_usage_error() {
    let o = chazy(&["verify", "--equation", "XIII"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the family"));
}

#[test]
fn malformed_flags_exit_two() {
    assert_eq!(chazy(&["verify", "--samples", "many"], &[]).status.code(), Some(2));
    assert_eq!(chazy(&["verify", "--exact-only", "--numeric-only"], &[]).status.code(), Some(2));
    assert_eq!(chazy(&["xi-obstruction", "--k", "5..2"], &[]).status.code(), Some(2));
    assert_eq!(chazy(&["frobnicate"], &[]).status.code(), Some(2));
}

#[test]
fn verify_exact_passes_and_is_deterministic() {
    let args = ["verify", "--equation", "IX", "--exact-only", "--json"];
    let a = chazy(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    let b = chazy(&args, &[]);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["config"]["precision"], 128);
    assert!(lines[1..lines.len() - 1].iter().all(|r| r["equation"] == "IX" && r["passed"] == true));
    assert_eq!(lines.last().unwrap()["summary"]["failed"], 0);
}

#[test]
fn environment_overrides_are_echoed() {
    let o = chazy(
        &["verify", "--equation", "IV", "--numeric-only", "--samples", "3", "--json"],
        &[("CHAZY_SEED", "17"), ("CHAZY_PRECISION", "96")],
    );
    let head: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(head["config"]["seed"], 17);
    assert_eq!(head["config"]["precision"], 96);
}

#[test]
fn xi_obstruction_range() {
    let o = chazy(&["xi-obstruction", "--k", "5..7", "--order", "12", "--json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["obstruction"].is_null() && rows[0]["recursion_exact"] == true);
    assert_eq!(rows[1]["obstruction"], "1/8");
}

#[test]
fn integrate_reports_singularity() {
    // φ = 1/(1 − t) solves φ''' = 6(φ')², with a pole at t = 1.
    let o = chazy(&["integrate", "--equation", "XI:1", "--init", "1,1,2", "--path", "2"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("singularity near"));
    let o = chazy(&["integrate", "--equation", "XI:1", "--init", "1,1,2", "--path=-1", "--json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let end = v["end"][0].as_str().unwrap();
    assert!(end.starts_with("5.000000000000000e-1"), "{end}");
}

#[test]
fn catalog_lists_entries() {
    let o = chazy(&["catalog"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 16);
}
