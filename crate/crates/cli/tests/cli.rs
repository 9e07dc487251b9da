use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use tropint_cli::commands::{bezout_bound_cmd, degree_bound_cmd, hypersurface_cmd, mixed_volume_cmd, Input};
use tropint_cli::error::CliError;
use tropint_cli::system::SystemFile;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tropint"));
    c.env_remove("TROPINT_SEED");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn input(text: &str) -> Input {
    Input::from_bytes("inline.json".into(), text.as_bytes().to_vec()).unwrap()
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, report)
}

const TRIANGLE: &str = r#"{"vars": 2, "polynomials": [{"terms": [
    {"exp": [1, 0], "coef": "0"}, {"exp": [0, 1], "coef": "0"}, {"exp": [0, 0], "coef": "0"}]}]}"#;

#[test]
fn tropical_line_has_one_vertex_and_three_unit_rays() {
    let r = hypersurface_cmd(&input(TRIANGLE), 0, false).unwrap().report;
    let res = &r["results"];
    assert_eq!(res["vertices"], serde_json::json!([["0", "0"]]));
    let facets = res["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 3);
    assert!(facets.iter().all(|f| f["weight"] == "1" && f["rays"].as_array().unwrap().len() == 1));
    assert_eq!(res["balanced"], true);
}

#[test]
fn one_variable_double_root() {
    let text = r#"{"vars": 1, "polynomials": [{"terms": [{"exp": [0], "coef": "0"}, {"exp": [2], "coef": "0"}]}]}"#;
    let r = hypersurface_cmd(&input(text), 0, false).unwrap().report;
    let facets = r["results"]["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 1);
    assert_eq!(facets[0]["base"], serde_json::json!(["0"]));
    assert_eq!(facets[0]["weight"], "2");
}

#[test]
fn malformed_coefficient_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        "{\"vars\": 1,\n\"polynomials\": [{\"terms\": [{\"exp\": [0], \"coef\": \"1/0\"}]}]}",
    );
    let (out, _) = run(&["hypersurface", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("denominator zero") && err.contains("line 2"), "{err}");
}

#[test]
fn dimension_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "big.json",
        r#"{"vars": 5, "polynomials": [{"terms": [{"exp": [0,0,0,0,0], "coef": "0"}, {"exp": [1,0,0,0,0], "coef": "0"}]}]}"#,
    );
    let (out, _) = run(&["hypersurface", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let (out, _) = run(&["degree-bound", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn four_variables_give_facets_without_ridges() {
    let text = r#"{"vars": 4, "polynomials": [{"terms": [
        {"exp": [0,0,0,0], "coef": "0"}, {"exp": [1,0,0,0], "coef": "1"}, {"exp": [0,1,0,0], "coef": "2"},
        {"exp": [0,0,1,0], "coef": "3"}, {"exp": [0,0,0,1], "coef": "4"}]}]}"#;
    let r = hypersurface_cmd(&input(text), 0, false).unwrap().report;
    assert_eq!(r["results"]["facets"].as_array().unwrap().len(), 10);
    assert_eq!(r["results"]["ridges"], Value::Null);
}

#[test]
fn arity_errors_exit_4() {
    let f = fixture("conic_cubic.json");
    let f = f.to_str().unwrap();
    for args in [
        vec!["mixed-volume", "--indices", "0", f],
        vec!["mixed-volume", "--indices", "0,7", f],
        vec!["bezout-bound", "--codim", "3", f],
        vec!["bezout-bound", "--codim", "0", f],
        vec!["hypersurface", "--poly", "2", f],
    ] {
        let (out, _) = run(&args);
        assert_eq!(out.status.code(), Some(4), "{args:?}");
    }
    let line = fixture("tropical_line.json");
    let (out, _) = run(&["stable-intersect", line.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_code_table() {
    let cases = [
        (CliError::Parse(String::new()), 2),
        (CliError::DimensionCap(String::new()), 3),
        (CliError::Arity(String::new()), 4),
        (CliError::NonGeneric(String::new()), 5),
        (CliError::TheoremViolation(String::new()), 6),
        (CliError::Internal(String::new()), 1),
    ];
    for (e, code) in cases {
        assert_eq!(e.exit_code(), code);
    }
    assert!(CliError::NonGeneric("x".into()).to_string().contains("perturb coefficients"));
    let e: CliError = tropint::intersect::IntersectError::NonGenericPerturbation.into();
    assert_eq!(e.exit_code(), 5);
}

#[test]
fn mixed_volume_examples() {
    let lines = fixture("two_lines.json");
    let (out, r) = run(&["mixed-volume", "--indices", "0,1", lines.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(r["results"]["normalized"], "1");
    assert_eq!(r["results"]["algorithms_agree"], true);

    let text = r#"{"vars": 2, "polynomials": [
        {"terms": [{"exp": [0,0], "coef": "0"}, {"exp": [1,0], "coef": "0"}, {"exp": [0,1], "coef": "0"}]},
        {"terms": [{"exp": [0,0], "coef": "0"}, {"exp": [1,0], "coef": "0"}, {"exp": [0,1], "coef": "0"}, {"exp": [1,1], "coef": "0"}]}]}"#;
    let r = mixed_volume_cmd(&input(text), &[0, 1]).unwrap().report;
    assert_eq!(r["results"]["normalized"], "2");
    // MV(P, P) = 2!·Vol(P) for the unit square
    let r = mixed_volume_cmd(&input(text), &[1, 1]).unwrap().report;
    assert_eq!(r["results"]["normalized"], "2");
    assert_eq!(r["results"]["unnormalized"], "1");
}

#[test]
fn stable_intersection_examples() {
    for (name, total, method) in [
        ("two_lines.json", "1", "direct"),
        ("conic_cubic.json", "6", "direct"),
        ("identical_conics.json", "4", "perturbation"),
    ] {
        let (out, r) = run(&["stable-intersect", fixture(name).to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        assert_eq!(r["results"]["total"], total, "{name}");
        assert_eq!(r["results"]["mixed_volume"], total, "{name}");
        assert_eq!(r["results"]["method"], method, "{name}");
    }
}

#[test]
fn degree_bound_examples() {
    let r = degree_bound_cmd(&input(TRIANGLE), 0, Some(200), 3).unwrap().report;
    assert_eq!(r["results"]["diameter_bound"], "2");
    assert_eq!(r["results"]["max_transverse_count"], 1);
    assert_eq!(r["results"]["bound_satisfied"], true);

    let single = r#"{"vars": 2, "polynomials": [{"terms": [{"exp": [1,1], "coef": "0"}]}]}"#;
    let r = degree_bound_cmd(&input(single), 0, Some(20), 0).unwrap().report;
    assert_eq!(r["results"]["diameter_bound"], "0");
    assert_eq!(r["results"]["max_transverse_count"], 0);

    let (out, r) = run(&["degree-bound", fixture("unit_square.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(r["results"]["diameter_bound"], "2");
    assert_eq!(r["results"]["max_transverse_count"], 2);
}

#[test]
fn seed_precedence() {
    let f = fixture("unit_square.json");
    let f = f.to_str().unwrap();
    let seed_of = |cmd: &mut Command| -> Value {
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["command"]["seed"].clone()
    };
    assert_eq!(seed_of(bin().args(["degree-bound", "--samples", "5", f])), 7);
    assert_eq!(seed_of(bin().args(["degree-bound", "--samples", "5", f]).env("TROPINT_SEED", "11")), 11);
    assert_eq!(
        seed_of(bin().args(["degree-bound", "--samples", "5", "--seed", "13", f]).env("TROPINT_SEED", "11")),
        13
    );
    let r = degree_bound_cmd(&input(TRIANGLE), 0, Some(5), 0).unwrap().report;
    assert_eq!(r["command"]["seed"], 0);
}

#[test]
fn bezout_examples() {
    let (out, r) = run(&["bezout-bound", "--codim", "1", fixture("bezout_pair.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(r["results"]["bound"], "5");
    assert_eq!(r["results"]["witness"], serde_json::json!([1]));

    let square = r#"{"terms": [{"exp": [0,0], "coef": "0"}, {"exp": [1,0], "coef": "1"}, {"exp": [0,1], "coef": "2"}, {"exp": [1,1], "coef": "3"}]}"#;
    let text = format!(r#"{{"vars": 2, "polynomials": [{square}, {square}, {square}]}}"#);
    let r = bezout_bound_cmd(&input(&text), 2).unwrap().report;
    assert_eq!(r["results"]["bound"], "2");
    assert_eq!(r["results"]["table"].as_array().unwrap().len(), 3);

    let r = bezout_bound_cmd(&Input::load(&fixture("conic_cubic.json")).unwrap(), 2).unwrap().report;
    assert_eq!(r["results"]["table"].as_array().unwrap().len(), 1);
    assert_eq!(r["results"]["bound"], "6");
}

#[test]
fn out_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let svg = dir.path().join("c.svg");
    let status = bin()
        .args(["--out", out.to_str().unwrap(), "stable-intersect", "--svg", svg.to_str().unwrap()])
        .arg(fixture("conic_cubic.json"))
        .status()
        .unwrap();
    assert!(status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"]["svg"], true);
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.contains("<svg") && picture.matches("<circle ").count() >= 1);

    let (out, _) =
        run(&["hypersurface", "--svg", svg.to_str().unwrap(), fixture("tropical_line.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polygon"));
}

#[test]
fn reports_reparse_and_systems_normalize() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let a = SystemFile::parse(&text).unwrap();
        let b = SystemFile::parse(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(SystemFile::parse(&a.to_json().to_string()).unwrap(), a);
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for entry in std::fs::read_dir(&golden).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(tropint_cli::report::render(&v), text);
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let f = fixture("conic_cubic.json");
    let a = bin().args(["bezout-bound", "--codim", "1"]).arg(&f).output().unwrap().stdout;
    let b = bin().args(["--threads", "3", "bezout-bound", "--codim", "1"]).arg(&f).output().unwrap().stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
