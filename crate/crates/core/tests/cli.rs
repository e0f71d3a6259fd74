use std::path::Path;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_cstar-flips");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(BIN).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn atiyah_flop() {
    let (code, env) = run(&["atiyah", "--m", "1", "--l", "1"]);
    assert_eq!(code, 0);
    assert_eq!(env["verdict"], "pass");
    assert_eq!(env["results"]["model"], "P^1 x P^1");
    assert_eq!(env["tool"], "cstar-flips");
    assert_eq!(env["command"][0], "atiyah");
    assert_eq!(env["parameters"]["m"], 1);
}

#[test]
fn atiyah_emits_fans() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let (code, env) = run(&[
        "atiyah",
        "--m",
        "2",
        "--l",
        "3",
        "--emit-fans",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(env["results"]["model"], "P^2 x P^3");
    for f in ["fan_minus.json", "fan_plus.json", "blowup.json"] {
        let path = out.join(f);
        let (c, e) = run(&["fan", "check", path.to_str().unwrap()]);
        assert_eq!(c, 0, "{f}");
        assert_eq!(e["results"]["smooth"], true, "{f}");
        assert_eq!(e["results"]["fan"]["lattice_rank"], 6);
    }
}

#[test]
fn invalid_sizes_exit_two() {
    for args in [
        &["atiyah", "--m", "0", "--l", "1"][..],
        &["atiyah", "--m", "1", "--l", "7"][..],
        &["drum", "quadric", "--n", "0"][..],
        &["drum", "quadric", "--n", "9"][..],
        &["drum", "quadric", "--n", "2", "--samples", "0"][..],
        &["atiyah", "--m", "one", "--l", "1"][..],
    ] {
        let (code, env) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(env["verdict"], "error", "{args:?}");
        assert!(env["reason"].is_string(), "{args:?}");
    }
}

#[test]
fn max_size_flag() {
    let (code, _) = run(&[
        "--max-size",
        "9",
        "drum",
        "quadric",
        "--n",
        "9",
        "--samples",
        "5",
    ]);
    assert_eq!(code, 0);
    let (code, _) = run(&["atiyah", "--m", "2", "--l", "2", "--max-size", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn segre_drum_is_p3() {
    let (code, env) = run(&["drum", "segre", "--m", "1", "--l", "1"]);
    assert_eq!(code, 0);
    let r = &env["results"];
    assert_eq!(r["projective_dimension"], 3);
    assert_eq!(r["ambient_dimension"], 4);
    assert_eq!(r["mu"]["bandwidth"], 1);
}

#[test]
fn mukai_witness() {
    let (code, env) = run(&[
        "drum",
        "quadric",
        "--n",
        "2",
        "--samples",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    let r = &env["results"];
    assert_eq!(r["seed"], 7);
    assert_eq!(r["quotient_dimension"], 4);
    assert_eq!(r["small"], true);
    assert_eq!(r["incidence_holds"], true);
}

#[test]
fn fan_check_conifold() {
    let (code, env) = run(&["fan", "check", &fixture("conifold.json")]);
    assert_eq!(code, 0);
    let r = &env["results"];
    assert_eq!(r["valid"], true);
    assert_eq!(r["smooth"], false);
    assert_eq!(r["non_smooth_cones"], serde_json::json!([0]));
    assert_eq!(r["cones"][0]["rays"].as_array().unwrap().len(), 4);
}

#[test]
fn fan_subdivide_conifold() {
    let (code, env) = run(&[
        "fan",
        "subdivide",
        &fixture("conifold.json"),
        "--ray",
        "1,1,2",
    ]);
    assert_eq!(code, 0);
    let r = &env["results"];
    assert_eq!(r["maximal_cones"], 4);
    assert_eq!(r["smooth"], true);
    assert_eq!(r["refines_input"], true);
    assert!(r["fan"]["rays"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!([1, 1, 2])));
}

#[test]
fn fan_dual_orthant() {
    let (code, env) = run(&["fan", "dual", &fixture("orthant.json")]);
    assert_eq!(code, 0);
    assert_eq!(env["results"]["self_dual"], true);
    let (_, env) = run(&["fan", "dual", &fixture("conifold.json")]);
    assert_eq!(env["results"]["self_dual"], false);
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.json",
        "{\n  \"lattice_rank\": 2,\n  \"rays\": [[1, 0]]\n  \"maximal_cones\": []\n}\n",
    );
    let (code, env) = run(&["fan", "check", &path]);
    assert_eq!(code, 2);
    let reason = env["reason"].as_str().unwrap();
    assert!(reason.contains("line 4"), "{reason}");
    assert!(reason.contains("column"), "{reason}");
}

#[test]
fn structurally_bad_fans() {
    let dir = tempfile::tempdir().unwrap();
    let nonprimitive = write(
        dir.path(),
        "a.json",
        r#"{"lattice_rank": 2, "rays": [[2, 0]], "maximal_cones": [[0]]}"#,
    );
    let missing = write(
        dir.path(),
        "b.json",
        r#"{"lattice_rank": 2, "rays": [[1, 0]], "maximal_cones": [[3]]}"#,
    );
    for p in [nonprimitive, missing] {
        let (code, env) = run(&["fan", "check", &p]);
        assert_eq!(code, 2, "{p}");
        assert_eq!(env["verdict"], "error");
    }
    let overlap = write(
        dir.path(),
        "c.json",
        r#"{"lattice_rank": 2, "rays": [[0, 1], [1, 0], [1, 1]], "maximal_cones": [[0, 1], [1, 2]]}"#,
    );
    let (code, env) = run(&["fan", "check", &overlap]);
    assert_eq!(code, 1);
    assert_eq!(env["verdict"], "fail");
    assert!(env["reason"]
        .as_str()
        .unwrap()
        .contains("not a common face"));
}

#[test]
fn out_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = Command::new(BIN)
        .args([
            "drum",
            "segre",
            "--m",
            "2",
            "--l",
            "1",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let env: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env["results"]["projective_dimension"], 4);
}

#[test]
fn report_round_trips() {
    let out = Command::new(BIN)
        .args(["atiyah", "--m", "1", "--l", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let env: cstar_flips::cli::ReportEnvelope = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&env).unwrap() + "\n";
    assert_eq!(again, text);
}
