//! End-to-end checks of the verification harness binary.

use std::process::{Command, Output};

fn minrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_all_json_passes_and_is_deterministic() {
    let first = minrep(&["verify", "all", "--format", "json"]);
    assert!(first.status.success(), "exit code 0 expected");
    let second = minrep(&["verify", "all", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout, "byte-deterministic output");

    let checks: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    let arr = checks.as_array().expect("array of checks");
    assert!(arr.len() >= 60, "full run has at least 60 checks");
    let mut ids = std::collections::BTreeSet::new();
    for c in arr {
        assert_eq!(c["status"], "pass", "{}", c["id"]);
        assert!(
            ids.insert(c["id"].as_str().unwrap().to_string()),
            "duplicate id {}",
            c["id"]
        );
        assert!(c.get("duration_ms").is_none(), "no timings by default");
    }
}

#[test]
fn filter_narrows_the_run() {
    let out = minrep(&[
        "verify",
        "gk",
        "--filter",
        "gk.cv0.product.*",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let checks: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = checks.as_array().unwrap();
    assert_eq!(arr.len(), 14);
    assert!(arr
        .iter()
        .all(|c| c["id"].as_str().unwrap().starts_with("gk.cv0.product.")));
}

#[test]
fn exhausted_budget_fails_checks_with_exit_1() {
    // The rank-7 brute-force enumeration needs 161280 cosets; a budget
    // below that turns the corresponding checks into failures.
    let out = minrep(&[
        "verify",
        "relevant",
        "--budget",
        "100000",
        "--filter",
        "relevant.brute.D7:D6",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let checks: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(checks.as_array().unwrap()[0]["status"], "fail");
}

#[test]
fn usage_errors_exit_2() {
    let out = minrep(&["verify", "bogus-section"]);
    assert_eq!(out.status.code(), Some(2));
    let out = minrep(&["gk", "factor", "E7:E6", "v7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = minrep(&["show", "pair", "C2:C1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn show_roots_counts() {
    let out = minrep(&["show", "roots", "E6", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 36);
}

#[test]
fn gk_factor_residue() {
    let out = minrep(&["gk", "factor", "E7:E6", "v0", "--at", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("xi(s-8)xi(s-4)xi(s)/(xi(s+1)xi(s+5)xi(s+9))"));
    assert!(text.contains("R*xi(4)*xi(5)/(xi(6)*xi(10)*xi(14))"));
}

#[test]
fn gk_factor_v1_value() {
    let out = minrep(&["gk", "factor", "E8:E7", "v1", "--at", "19/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("xi(6)*xi(10)*xi(14)/(xi(15)*xi(20)*xi(24))"), "{text}");
}

#[test]
fn decomp_expand_renders() {
    let out = minrep(&["decomp", "expand", "D5:D4", "--depth", "full"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "theta[D5:D4] = theta_X5 + |D|^1/2 theta_X4.B + p_5 + |D|^1/2 p_4.B + |D| theta[D3:D2].B.B"
    );
}

#[test]
fn custom_zeta_model() {
    let out = minrep(&[
        "verify",
        "model",
        "--zeta",
        "q=3,g=2,num=1,0,0,0,9",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let checks: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(checks.as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn config_file_model() {
    let dir = std::env::temp_dir().join("minrep-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeta.conf");
    std::fs::write(&path, "# stock model over F_3\nq=3\ng=1\nnum=1,0,3\n").unwrap();
    let out = minrep(&[
        "verify",
        "model",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
}

#[test]
fn ct_audit_e7_e6() {
    let out = minrep(&["ct", "audit", "E7:E6", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = rows.as_array().unwrap();
    let v0 = arr.iter().filter(|r| r["class"] == "V0Term").count();
    let v1 = arr.iter().filter(|r| r["class"] == "V1Term").count();
    assert_eq!((v0, v1), (1, 1));
}
