use std::path::PathBuf;
use std::process::{Command, Output};

use jetbound::JetSpace;

fn path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn jetbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetbound"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validate(json: &str) {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path("schema/report.schema.json")).unwrap())
            .unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let doc: serde_json::Value = serde_json::from_str(json).unwrap();
    let msgs: Vec<String> = match compiled.validate(&doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn rel_euler_matches_golden_files() {
    for (problem, golden) in [
        (
            "tests/fixtures/dirichlet.json",
            "tests/golden/dirichlet_rel_euler.json",
        ),
        (
            "tests/fixtures/beam.json",
            "tests/golden/beam_rel_euler.json",
        ),
    ] {
        let o = jetbound(&["rel-euler", "--problem", problem, "--format", "json"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), std::fs::read_to_string(path(golden)).unwrap());
    }
}

#[test]
fn text_reports() {
    let o = jetbound(&["rel-euler", "--problem", "tests/fixtures/dirichlet.json"]);
    let text = stdout(&o);
    assert!(text.contains("E1: -u1_{2,0} - u1_{0,2} = 0"));
    assert!(text.contains("natural boundary conditions on x_n = 0"));
    assert!(text.contains("(k=1, i=0): ub1_1_{0} = 0"));

    let o = jetbound(&["el", "--problem", "tests/fixtures/beam.json"]);
    assert_eq!(stdout(&o), "Euler-Lagrange equations:\n  E1: u1_{4} = 0\n");

    let o = jetbound(&["green", "--problem", "tests/fixtures/beam.json"]);
    let text = stdout(&o);
    assert!(text.contains("h1 = u1_{4}"));
    assert!(text.contains("k=1 sigma={1}: u1_{2}"));
    assert!(text.contains("k=1 sigma={0}: -u1_{3}"));
}

#[test]
fn check_passes_and_is_deterministic() {
    for problem in [
        "tests/fixtures/dirichlet.json",
        "tests/fixtures/minimal_surface.json",
    ] {
        let args = [
            "check",
            "--problem",
            problem,
            "--format",
            "json",
            "--seed",
            "17",
        ];
        let a = jetbound(&args);
        let b = jetbound(&args);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
        validate(&stdout(&a));
    }
    let o = jetbound(&[
        "check",
        "--problem",
        "tests/fixtures/dirichlet.json",
        "--strategy",
        "alternate",
        "--probes",
        "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS first_variation"));
}

#[test]
fn every_command_validates_against_the_schema() {
    for cmd in ["el", "rel-euler", "green", "check"] {
        let o = jetbound(&[
            cmd,
            "--problem",
            "tests/fixtures/minimal_surface.json",
            "--format",
            "json",
        ]);
        assert!(o.status.success());
        validate(&stdout(&o));
    }
}

#[test]
fn report_expressions_reparse_to_equal_values() {
    let o = jetbound(&[
        "rel-euler",
        "--problem",
        "tests/fixtures/minimal_surface.json",
        "--format",
        "json",
    ]);
    let r: jetbound::Report = serde_json::from_str(&stdout(&o)).unwrap();
    let s = JetSpace::new(2, 1).unwrap();
    let f = s.parse("sqrt(1 + u1_{1,0}^2 + u1_{0,1}^2)").unwrap();
    let expected = s.relative_euler(&f).unwrap();
    assert_eq!(s.parse(&r.el[0]).unwrap(), expected.el[0]);
    assert_eq!(
        s.parse_boundary(&r.theta[0].expr).unwrap(),
        expected.theta[&(1, 0)]
    );
}

#[test]
fn input_errors_exit_with_two() {
    let o = jetbound(&["el", "--problem", "tests/fixtures/malformed.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));

    let o = jetbound(&["el", "--problem", "tests/fixtures/does_not_exist.json"]);
    assert_eq!(o.status.code(), Some(2));

    let o = jetbound(&["el"]);
    assert_eq!(o.status.code(), Some(2));

    let o = jetbound(&[
        "el",
        "--problem",
        "tests/fixtures/dirichlet.json",
        "--strategy",
        "diagonal",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n": 2, "m": 1, "lagrangian": "u1", "normal_axis": 1}"#,
    )
    .unwrap();
    let o = jetbound(&["el", "--problem", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&bad, r#"{"n": 2, "m": 1, "lagrangian": "u2_{1,0}"}"#).unwrap();
    let o = jetbound(&["el", "--problem", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constant_euler_lagrange_expression_has_no_extremals() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("u.json");
    std::fs::write(&p, r#"{"n": 1, "m": 1, "lagrangian": "u1"}"#).unwrap();
    let o = jetbound(&["el", "--problem", p.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("E1: 1 = 0"));
    assert!(text.contains("no extremals"));
}

#[test]
fn pullback_subcommand() {
    let o = jetbound(&["pullback", "u1_{2,3} + x2*u1", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ub1_3_{2}\n");

    let o = jetbound(&[
        "pullback",
        "sin(x2)*u1",
        "--problem",
        "tests/fixtures/dirichlet.json",
    ]);
    assert_eq!(stdout(&o), "0\n");

    let o = jetbound(&["pullback", "u1_{1,0}", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pullback"], "ub1_0_{1}");

    let o = jetbound(&["pullback", "1/x2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = jetbound(&["pullback", "u1"]);
    assert_eq!(o.status.code(), Some(2));
}
