use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("specs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    (
        serde_json::from_slice(&o.stdout).expect("json report"),
        o.status.code().unwrap(),
    )
}

fn result<'a>(v: &'a Value, name: &str) -> &'a str {
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap()["value"]
        .as_str()
        .unwrap()
}

#[test]
fn hp_of_ground_field() {
    let o = run(&["hp", spec("k.json").to_str().unwrap(), "--max-weight", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("HP0 = 1, HP1 = 0, stabilized at k=2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn hp_comparison_on_dg_fixture() {
    let o = run(&["verify", "thm45", spec("dg.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("pipeline HP0") && text.contains("status: PASS"),
        "{text}"
    );
}

#[test]
fn invalid_algebra_prints_witness() {
    let o = run(&["validate", spec("bad.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("Stasheff witness, arity 3: (m∘m)(a,a,a)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn validate_attachments() {
    let (v, code) = json(&["validate", spec("dual_numbers.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "trace"), "closed");
    assert_eq!(result(&v, "deformation closed for trace"), "true");
}

#[test]
fn homology_tables() {
    let cubic = spec("cubic.json");
    let (v, code) = json(&["hh", cubic.to_str().unwrap(), "--degrees", "0..3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    assert_eq!(result(&v, "HH0"), "3");
    assert_eq!(result(&v, "HH1"), "2");
    let (v, _) = json(&["hc", spec("k.json").to_str().unwrap()]);
    let dims: Vec<&str> = (0..=5).map(|n| result(&v, &format!("HC{n}"))).collect();
    assert_eq!(dims, ["1", "0", "1", "0", "1", "0"]);
    let (v, _) = json(&["cohomology", cubic.to_str().unwrap(), "--degrees", "2"]);
    assert_eq!(result(&v, "HH^2(A,A)"), "2");
}

#[test]
fn traces_of_matrices() {
    let (v, code) = json(&["traces", spec("m2.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "closed graded traces"), "1");
    assert_eq!(result(&v, "HC^0"), "1");
}

#[test]
fn randomized_bracket_checks() {
    let (v, code) = json(&[
        "bracket",
        spec("ainf.json").to_str().unwrap(),
        "--seed",
        "5",
        "--cases",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "[m, m]"), "0");
    assert_eq!(result(&v, "Jacobi"), "8/8");
}

#[test]
fn deformation_step() {
    let (v, code) = json(&["deform", spec("dual_numbers.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "obstruction class in HC^3 vanishes"), "true");
    assert_eq!(result(&v, "extension is closed"), "true");
    let o = run(&["deform", spec("k.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_claims() {
    for (claim, file) in [
        ("prop23", "ainf.json"),
        ("thm44", "graded_dual_numbers.json"),
        ("cor42", "dg.json"),
        ("sbi", "m2.json"),
        ("quasi-iso", "cubic.json"),
    ] {
        let (v, code) = json(&["verify", claim, spec(file).to_str().unwrap()]);
        assert_eq!(code, 0, "{claim}: {v}");
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn capped_ladder() {
    let (v, code) = json(&[
        "hp",
        spec("cubic.json").to_str().unwrap(),
        "--stabilize",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "HP0"), "1");
    assert_eq!(
        v["evidence"][0]["data"]["levels"],
        serde_json::json!([0, 2, 4])
    );
}

#[test]
fn window_errors_exit_one() {
    let o = run(&["hp", spec("k.json").to_str().unwrap(), "--max-weight", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window exceeded"));
    let o = run(&["hh", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_are_stable() {
    let path = spec("ainf.json");
    let args = ["verify", "sbi", path.to_str().unwrap(), "--format", "json"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let v: Value = serde_json::from_str(&first).unwrap();
    for key in ["command", "window", "results", "evidence", "status"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["window"]["reliable_bound"], 5);
}
