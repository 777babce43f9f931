use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wallcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn bettis(v: &Value) -> Vec<u64> {
    v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["betti"].as_u64().unwrap())
        .collect()
}

#[test]
fn build_kpi_rank_one() {
    let v = json(&wallcx(&["build", "kpi", "--g", "1", "--bound", "1"]));
    assert_eq!(v["complex"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["provenance"]["kind"], "kpi");
    assert_eq!(v["provenance"]["g"], 1);
}

#[test]
fn build_rank_zero_is_empty() {
    let v = json(&wallcx(&["build", "kpi", "--g", "0"]));
    assert!(v["complex"]["vertices"].as_array().unwrap().is_empty());
}

#[test]
fn build_then_homology_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.json");
    let p = path.to_str().unwrap();
    let out = wallcx(&["build", "L", "--g", "2", "--maxlen", "2", "--out", p]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!doc["poset"]["elements"].as_array().unwrap().is_empty());
    let h = json(&wallcx(&["homology", p, "--through-dim", "1"]));
    // Below the connectivity range, so only nonemptiness is expected.
    assert_eq!(bettis(&h).len(), 2);
    assert!(bettis(&h)[0] >= 1);
}

#[test]
fn build_m_records_reading() {
    let v = json(&wallcx(&[
        "build",
        "M",
        "--g",
        "1",
        "--reading",
        "orthogonal-to-all",
    ]));
    assert_eq!(v["provenance"]["reading"], "OrthogonalToAll");
}

#[test]
fn homology_of_fixtures() {
    let s2 = json(&wallcx(&[
        "homology",
        &fixture("boundary_simplex3.json"),
        "--through-dim",
        "2",
    ]));
    assert_eq!(bettis(&s2), vec![1, 0, 1]);
    let rp2 = json(&wallcx(&[
        "homology",
        &fixture("projective_plane.json"),
        "--through-dim",
        "2",
    ]));
    assert_eq!(bettis(&rp2), vec![1, 0, 0]);
    assert_eq!(rp2["degrees"][1]["torsion"], serde_json::json!([2]));
    let csv = wallcx(&[
        "homology",
        &fixture("projective_plane.json"),
        "--through-dim",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "degree,betti,torsion\n0,1,\n1,0,2\n"
    );
}

#[test]
fn reduced_homology_of_empty_complex() {
    let v = json(&wallcx(&[
        "homology",
        &fixture("empty.json"),
        "--reduced",
        "--through-dim",
        "1",
    ]));
    assert_eq!(v["empty"], true);
    assert_eq!(v["reduced"], true);
}

#[test]
fn malformed_input_exits_65() {
    assert_eq!(
        wallcx(&["homology", &fixture("malformed.json")])
            .status
            .code(),
        Some(65)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(
        wallcx(&["homology", path.to_str().unwrap()]).status.code(),
        Some(65)
    );
}

#[test]
fn missing_input_exits_74() {
    assert_eq!(
        wallcx(&["homology", "/nonexistent/file.json"])
            .status
            .code(),
        Some(74)
    );
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(wallcx(&["verify", "bogus"]).status.code(), Some(64));
    assert_eq!(
        wallcx(&["build", "kpi", "--bound", "0"]).status.code(),
        Some(64)
    );
    assert_eq!(wallcx(&["frobnicate"]).status.code(), Some(64));
    let out = Command::new(env!("CARGO_BIN_EXE_wallcx"))
        .args(["stable-range", "--g", "3"])
        .env("WALLCX_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn stable_range_values() {
    for (g, want) in [("3", "0"), ("9", "3"), ("2", "-1")] {
        let out = wallcx(&["stable-range", "--g", g]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().next(), Some(want));
    }
}

#[test]
fn verify_is_deterministic() {
    let a = wallcx(&["verify", "algebra", "--seed", "42"]);
    let b = wallcx(&["verify", "algebra", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
    let csv = wallcx(&["verify", "posets", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout)
        .unwrap()
        .starts_with("id,verdict,anchor,params,summary\n"));
}

#[test]
fn connectivity_without_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_wallcx"))
        .args(["verify", "connectivity", "--budget", "0"])
        .env("WALLCX_THREADS", "2")
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 2, "exit {code}");
}
