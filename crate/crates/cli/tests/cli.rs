use std::path::PathBuf;
use std::process::{Command, Output};

use defspace::components::{ComponentCount, DimFormulas};
use defspace::galois::CohomologyDims;
use defspace::scenario::ScenarioReport;
use serde_json::Value;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defspace"))
        .args(args)
        .env("DEFSPACE_DATA", data())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn pi1_of_pgl6() {
    let o = run(&["rdx", "pi1", "--type", "PGL6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(6)");
    assert_eq!(
        json(&["rdx", "pi1", "--type", "PGL6"])["pi1"],
        serde_json::json!([6])
    );
}

#[test]
fn gl2_dims() {
    let o = run(&["defring", "dims", "--type", "GL2", "--dF", "1"]);
    assert!(
        stdout(&o).lines().any(|l| l == "rel_dim 8"),
        "{}",
        stdout(&o)
    );
    let v = json(&["defring", "dims", "--type", "GL2", "--dF", "1"]);
    assert_eq!(v["rel_dim"], 8);
    let f: DimFormulas = serde_json::from_value(v).unwrap();
    assert_eq!(f.rel_dim_rsquare, 8);
}

#[test]
fn components_over_q2() {
    let v = json(&["components", "count", "--p", "2", "--type", "GL3"]);
    let c: ComponentCount = serde_json::from_value(v).unwrap();
    assert_eq!(c.count, 2);
    let c: ComponentCount =
        serde_json::from_value(json(&["components", "count", "--p", "5", "--type", "GL3"]))
            .unwrap();
    assert_eq!(c.count, 1);
    let lattice = r#"{"rank": 1}"#;
    let c: ComponentCount = serde_json::from_value(json(&[
        "components",
        "count",
        "--p",
        "2",
        "--lattice",
        lattice,
    ]))
    .unwrap();
    assert_eq!(c.count, 2);
}

#[test]
fn cohomology_roundtrips() {
    let rep = r#"{"field": {"p": 3}, "sigma": [[1]], "tau": [[1]]}"#;
    let v = json(&["galois", "h", "--field", r#"{"p": 3}"#, "--rep", rep]);
    let h: CohomologyDims = serde_json::from_value(v.clone()).unwrap();
    assert_eq!((h.h0, h.h1, h.h2), (1, 2, 0));
    assert_eq!(serde_json::to_value(h).unwrap(), v);
}

#[test]
fn invariant_battery_passes() {
    let o = run(&["scenario", "run", "scenarios/lie_invariants.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: ScenarioReport =
        serde_json::from_value(json(&["scenario", "run", "scenarios/lie_invariants.json"]))
            .unwrap();
    assert!(report.all_pass());
    assert!(report.passed > 0);
}

#[test]
fn corrupted_expectation_exits_one() {
    let dir = std::env::temp_dir().join(format!("defspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"scenarios": [{"name": "pgl6", "op": "pi1", "inputs": {"type": "PGL6"}, "expected": {"pi1": [5]}}]}"#).unwrap();
    let o = run(&["scenario", "run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected [5], computed [6]"));
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"scenarios\": [\n    {]\n}").unwrap();
    let o = run(&["scenario", "run", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["rdx", "pi1", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(run(&["rdx", "pi1", "--nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["galois", "h", "--field", r#"{"p": 4}"#, "--rep", "{}"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cocycle_commands() {
    let v = json(&["ext", "build", "--cocycle", "cocycles/quaternion.json"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["abelian"], false);
    assert_eq!(
        run(&["ext", "verify", "--cocycle", "cocycles/quaternion.json"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["ext", "verify", "--cocycle", "cocycles/broken.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn semisimplification_and_seeded_battery() {
    let v = json(&["ssim", "run", "--rep", "reps/upper_f5.json"]);
    assert_eq!(v["blocks"], serde_json::json!([1, 1, 1]));
    let a = run(&[
        "--json", "ssim", "battery", "--p", "3", "--blocks", "2,1", "--count", "5", "--seed", "11",
    ]);
    let b = run(&[
        "--json", "ssim", "battery", "--p", "3", "--blocks", "2,1", "--count", "5", "--seed", "11",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "levis", "--type", "Sp4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--json", "scenario", "run", "scenarios/lie_invariants.json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn codim2_split() {
    let v = json(&["levis", "--type", "GL2xGL1", "--codim2"]);
    assert!(v["checked"].as_u64().is_some());
    let v = json(&["levis", "--type", "G2", "--codim2"]);
    assert!(v["levi"].is_null());
}
