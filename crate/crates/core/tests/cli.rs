use std::path::Path;
use std::process::{Command, Output};

fn reflap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflap"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run reflap")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    std::fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

const EXAMPLE_1: &str = "[equation]\na = 4\nb = 2\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 2\n";
const EXAMPLE_2: &str = "[equation]\na = 2\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n";

#[test]
fn solve_writes_deterministic_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ex1.problem", EXAMPLE_1);
    let first = reflap(&["solve", &f, "--out-dir", "a"], dir.path());
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = reflap(&["solve", &f, "--out-dir", "b"], dir.path());
    assert_eq!(second.status.code(), Some(0));
    for name in ["ex1.report", "ex1.csv"] {
        let a = std::fs::read(dir.path().join("a").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    let csv = std::fs::read_to_string(dir.path().join("a/ex1.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,xdot,residual"));
    assert_eq!(lines.count(), 16001);
    let report = std::fs::read_to_string(dir.path().join("a/ex1.report")).unwrap();
    assert!(report.contains("oracle.harmonic_balance = "));
    assert!(report.contains("oracle.rk4 = "));
    assert_eq!(String::from_utf8(first.stdout).unwrap(), report);
    assert!(!dir.path().join("a/ex1.findings.tsv").exists());
}

#[test]
fn example_two_exits_zero_with_findings() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ex2.problem", EXAMPLE_2);
    let out = reflap(&["solve", &f], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let findings = std::fs::read_to_string(dir.path().join("ex2.findings.tsv")).unwrap();
    let records = reflap::cli::parse_findings(&findings).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].verdict, "hypothesis_violated_solution_bounded");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("resonant", "[equation]\na = 4\nb = 2\n[basis]\ngenerators = 1.4142135623730951\n[forcing]\nterm = 0, 1 @ 1\n", "solve", 2),
        (
            "steep",
            "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[nonlinearity]\nmono = 2, 1, 0\nradius = 1\n[solver]\nmode = picard\n",
            "solve-nonlinear",
            3,
        ),
        ("mixed", "[equation]\na = 1\nb = 3\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n", "solve", 4),
        ("syntax", "[equation]\na = 1\nb = ?\n", "solve", 5),
        ("zero_b", "[equation]\na = 1\nb = 0\n[basis]\ngenerators = 1\n", "solve", 5),
        // A step far too coarse for the Green quadrature: the closed-form
        // oracle disagrees.
        (
            "coarse",
            "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[solver]\nmode = grid\nT = 40\nh = 0.5\n",
            "solve",
            6,
        ),
        (
            "wrong_subcommand",
            "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[nonlinearity]\nmono = 0.1, 1, 0\nradius = 1\n[solver]\nmode = picard\n",
            "solve",
            5,
        ),
    ];
    for (name, text, cmd, code) in cases {
        let f = write(dir.path(), &format!("{name}.problem"), text);
        let out = reflap(&[cmd, &f], dir.path());
        assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = reflap(&["solve", "missing.problem"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = reflap(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.problem", "[equation]\na = 1\nb = 2\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1, 2\n");
    let out = reflap(&["solve", &f], dir.path());
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("status = input_error"), "{err}");
    assert!(err.contains("line 7, column 14"), "{err}");
}

#[test]
fn classify_verify_and_nonlinear() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ex1.problem", EXAMPLE_1);
    let out = reflap(&["classify", &f], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("regime = Oscillatory"));
    assert!(text.contains("rate.mu = 1.4142135623730951e0"));

    let out = reflap(&["verify", &f], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verification = pass"));
    assert!(!dir.path().join("ex1.csv").exists());

    let nl = write(
        dir.path(),
        "nl.problem",
        "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[nonlinearity]\nmono = 0.05, 1, 1\nradius = 1\n[solver]\nmode = picard\nT = 30\nh = 0.01\n",
    );
    let out = reflap(&["solve-nonlinear", &nl], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = std::fs::read_to_string(dir.path().join("nl.report")).unwrap();
    assert!(report.contains("picard.governing = derived"));
    assert!(report.contains("oracle.restart.within = true"));
    let csv = std::fs::read_to_string(dir.path().join("nl.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6002);
}

#[test]
fn demo_prints_findings() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflap(&["demo", "--out-dir", "demo"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for section in ["[example-1]", "[example-2]", "[bound-probe]", "[findings]"] {
        assert!(text.contains(section), "{section}");
    }
    let findings = std::fs::read_to_string(dir.path().join("demo/demo.findings.tsv")).unwrap();
    let records = reflap::cli::parse_findings(&findings).unwrap();
    let constants: Vec<&str> = records.iter().map(|r| r.constant.as_str()).collect();
    assert_eq!(constants, ["nonresonance_margin", "classical_constant"]);
}
