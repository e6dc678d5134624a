//! Golden-file tests for the `burnloc` binary.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use burnloc::fixtures;
use burnloc::lattice::GroupStructure;
use burnloc::model::VerdictReport;

const BIN: &str = env!("CARGO_BIN_EXE_burnloc");

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(root()).args(args).env_remove("BURNLOC_ORDER_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

fn run(args: &[&str]) -> Output {
    run_with(args, &[])
}

fn check_golden(name: &str, actual: &str) {
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

/// Runs a case, checks its exit code, and pins stdout (or stderr on failure).
fn golden(name: &str, args: &[&str], code: i32) -> Output {
    let out = run(args);
    assert_eq!(out.code, code, "{name}: stderr was {}", out.stderr);
    if code == 0 {
        check_golden(&format!("{name}.out"), &out.stdout);
    } else {
        assert!(out.stdout.is_empty());
        check_golden(&format!("{name}.err"), &out.stderr);
    }
    out
}

const G2: &str = "tests/golden/inputs/g2.json";
const ZERO: &str = "tests/golden/inputs/zero.json";

#[test]
fn structure_of_the_hyperelliptic_example() {
    let out = golden(
        "structure-hyperelliptic-json",
        &["structure", "--group", G2, "--catalog", "hyperelliptic-Z2", "--json"],
        0,
    );
    assert_eq!(out.stdout.trim(), r#"{"free_rank":1,"torsion":[]}"#);
    golden(
        "structure-hyperelliptic",
        &["structure", "--group", G2, "--catalog", "hyperelliptic-Z2"],
        0,
    );
}

#[test]
fn structure_of_every_catalog() {
    for name in fixtures::CATALOG_NAMES {
        let out = golden(&format!("structure-{name}"), &["structure", "--catalog", name, "--json"], 0);
        let _: GroupStructure = serde_json::from_str(&out.stdout).unwrap();
    }
    golden(
        "structure-hyperelliptic-maximal",
        &["structure", "--catalog", "hyperelliptic-Z2", "--filter", "maximal", "--json"],
        0,
    );
    golden(
        "structure-exotic-maximal",
        &["structure", "--catalog", "nonhyperelliptic-Z2-exotic", "--filter", "maximal"],
        0,
    );
}

#[test]
fn invariant_from_counts() {
    let out = golden("invariant-0-1-0", &["invariant", "--counts", "0,1,0"], 0);
    assert!(out.stdout.contains("I=-2\n"));
    assert!(out.stdout.contains("OBSTRUCTED"));
    golden("invariant-0-1-0-json", &["invariant", "--counts", "0,1,0", "--json"], 0);
    golden("invariant-2-0-2", &["invariant", "--counts", "2,0,2", "--no-banner"], 0);
}

#[test]
fn equality_of_classes() {
    let out = golden(
        "equal-zero",
        &["equal", "--group", G2, "--catalog", "hyperelliptic-Z2", "--a", ZERO, "--b", ZERO, "--json"],
        0,
    );
    assert_eq!(out.stdout.trim(), r#"{"equal":true}"#);
    let b1 = run(&[
        "equal",
        "--catalog",
        "hyperelliptic-Z2",
        "--a",
        "tests/golden/inputs/fixed-curve.json",
        "--b",
        "tests/golden/inputs/minus-jac.json",
        "--no-banner",
    ]);
    assert_eq!((b1.code, b1.stdout.as_str()), (0, "equal: true\n"));
    let ruled = run(&[
        "equal",
        "--catalog",
        "hyperelliptic-Z2",
        "--a",
        "tests/golden/inputs/ruled.json",
        "--b",
        ZERO,
        "--no-banner",
    ]);
    assert_eq!((ruled.code, ruled.stdout.as_str()), (0, "equal: false\n"));
}

#[test]
fn verdicts_of_every_model() {
    for name in fixtures::MODEL_NAMES.iter().filter(|n| !n.starts_with("elliptic")) {
        golden(&format!("verdict-{name}"), &["verdict", "--model", name], 0);
        let out = golden(&format!("verdict-{name}-json"), &["verdict", "--model", name, "--json"], 0);
        let report: VerdictReport = serde_json::from_str(&out.stdout).unwrap();
        assert!(report.consistent, "{name}");
    }
    golden("error-verdict-genus-one", &["verdict", "--model", "elliptic-fixed-curve"], 2);
}

#[test]
fn classes_and_phi_of_models() {
    for name in ["involution-SxP1", "three-nodal-cubic", "dp6-fibration", "quadric-bundle"] {
        golden(&format!("class-{name}"), &["class", "--model", name, "--reduce"], 0);
        golden(&format!("phi-{name}"), &["phi", "--model", name, "--json"], 0);
    }
    golden(
        "class-conic-bundle-exotic-json",
        &["class", "--model", "conic-bundle-exotic", "--json"],
        0,
    );
}

#[test]
fn relation_dumps() {
    for name in fixtures::CATALOG_NAMES {
        golden(&format!("relations-{name}"), &["relations", "--catalog", name, "--dump"], 0);
    }
    let out = golden(
        "relations-hyperelliptic-Z2-json",
        &["relations", "--catalog", "hyperelliptic-Z2", "--dump", "--json"],
        0,
    );
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn blowups_of_the_elliptic_example() {
    for center in fixtures::CENTER_NAMES {
        let model = if center == "elliptic-bullet-5" { "elliptic-empty" } else { "elliptic-fixed-curve" };
        let out = golden(
            &format!("verify-blowup-{center}"),
            &["verify-blowup", "--model", model, "--center", center, "--no-banner"],
            0,
        );
        assert!(out.stdout.ends_with("invariant: true\n"), "{center}");
    }
    golden(
        "verify-blowup-elliptic-bullet-1-json",
        &["verify-blowup", "--model", "elliptic-fixed-curve", "--center", "elliptic-bullet-1", "--json"],
        0,
    );
}

#[test]
fn error_exit_codes() {
    golden(
        "error-catalog-incomplete",
        &["structure", "--catalog", "tests/golden/inputs/catalog-missing-induce.json"],
        3,
    );
    golden(
        "error-bad-weights",
        &["verdict", "--model", "tests/golden/inputs/model-bad-weights.json"],
        2,
    );
    golden(
        "error-filter-closure",
        &["structure", "--catalog", "elliptic-Z2", "--filter", "maximal"],
        2,
    );
    golden("error-unknown-fixture", &["verdict", "--model", "no-such-model"], 2);
    golden("error-bad-counts", &["invariant", "--counts", "1,2"], 2);
    assert_eq!(run(&["structure"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn order_bound_from_environment() {
    let args = ["structure", "--catalog", "Z3-basic", "--json"];
    let low = run_with(&args, &[("BURNLOC_ORDER_BOUND", "2")]);
    assert_eq!(low.code, 2);
    assert!(low.stderr.contains("exceeds the bound 2"), "{}", low.stderr);
    assert_eq!(run_with(&args, &[("BURNLOC_ORDER_BOUND", "3")]).code, 0);
}

#[test]
fn banner_is_suppressible_and_output_deterministic() {
    let args = ["relations", "--catalog", "Z3-basic", "--dump"];
    let with = run(&args);
    assert!(with.stdout.starts_with("# burnloc "));
    let without = run(&[&args[..], &["--no-banner"]].concat());
    assert_eq!(with.stdout.split_once('\n').unwrap().1, without.stdout);
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, with.stdout);
    }
    let json = run(&["verdict", "--model", "quadric-bundle", "--json"]);
    assert!(!json.stdout.starts_with('#'));
}

#[test]
fn shipped_inputs_exist() {
    for f in [G2, ZERO] {
        assert!(Path::new(&root().join(f)).is_file());
    }
}

#[test]
fn inputs_may_be_inline_json() {
    let by_file = run(&["--json", "structure", "--catalog", "hyperelliptic-Z2", "--group", "tests/golden/inputs/g2.json"]);
    let inline = run(&["--json", "structure", "--catalog", "hyperelliptic-Z2", "--group", r#"{"kind":"cyclic","n":2}"#]);
    assert_eq!((by_file.code, inline.code), (0, 0));
    assert_eq!(by_file.stdout, inline.stdout);
    let model = std::fs::read_to_string(root().join("fixtures/models/three-nodal-cubic.json")).unwrap();
    let out = run(&["--json", "invariant", "--model", &model]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains(r#""invariant":1"#), "{}", out.stdout);
}
