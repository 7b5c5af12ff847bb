//! Exit codes, seeding, and output formats of the command-line front end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fkm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fkm-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_run_exits_zero() {
    let out = run(&["verify", "--m", "1", "--k", "2", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass:"), "summary line missing:\n{text}");
}

#[test]
fn failed_check_exits_one() {
    // an absurd tolerance forces the float checks to fail while the input
    // itself is perfectly valid
    let out = run(&["verify", "--m", "1", "--k", "2", "--samples", "5", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "no failing line:\n{text}");
}

#[test]
fn usage_and_input_errors_exit_two() {
    // degenerate family: the spectrum request is rejected up front
    let out = run(&["spectrum", "--m", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    // unknown flag is a clap usage error
    let out = run(&["verify", "--does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));

    // oversized request
    let out = run(&["rep", "--m", "24"]);
    assert_eq!(out.status.code(), Some(2));

    // corrupt system file
    let path = temp_path("corrupt.json");
    std::fs::write(&path, "not json").unwrap();
    let out = run(&["verify", "--system", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // malformed sign token
    let out = run(&["system", "--m", "4", "--k", "2", "--signs", "+,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sign_flags_reach_the_constructed_system() {
    for signs in ["+,-", "1,-1"] {
        let out = run(&["system", "--m", "4", "--k", "2", "--signs", signs, "--json"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["summand_signs"], serde_json::json!([1, -1]));
    }
}

#[test]
fn seed_env_var_is_the_fallback_and_the_flag_wins() {
    let explicit = run(&["invariants", "--seed", "5", "--json"]);
    let via_env = bin()
        .args(["invariants", "--json"])
        .env("FKM_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, via_env.stdout);

    let flag_wins = bin()
        .args(["invariants", "--seed", "5", "--json"])
        .env("FKM_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, flag_wins.stdout);
}

#[test]
fn json_report_has_stable_shape() {
    let out = run(&["verify", "--m", "2", "--k", "2", "--samples", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["config"]["seed"], 7, "default seed");
    assert!(v["checks"].as_array().map(|a| !a.is_empty()).unwrap_or(false));
    assert_eq!(v["pass"], true);
    // timing never enters the machine format
    assert!(v.get("elapsed").is_none() && v.get("time").is_none());
}

#[test]
fn system_artifacts_round_trip_through_files() {
    let path = temp_path("system-m2-k2.json");
    let out = run(&[
        "system", "--m", "2", "--k", "2", "--out", path.to_str().unwrap(), "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["l"], 4);
    let mat = &v["matrices"][0];
    assert_eq!(mat["rows"], 8);
    assert_eq!(mat["cols"], 8);
    let entry = &mat["entries"][0];
    assert!(entry.is_array() && entry.as_array().unwrap().len() == 2, "entries are [num, den] pairs");

    let verify = run(&["verify", "--system", path.to_str().unwrap(), "--samples", "5"]);
    assert_eq!(verify.status.code(), Some(0), "{}", String::from_utf8_lossy(&verify.stderr));
}

#[test]
fn rep_artifact_matches_the_dimension_table() {
    let out = run(&["rep", "--m", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 4);
    assert_eq!(v["dim"], 4);
    // E_1 .. E_{m-1}; the remaining two system elements come from doubling
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn csv_output_quotes_every_field() {
    let path = temp_path("report.csv");
    let out = run(&[
        "verify", "--m", "1", "--k", "2", "--samples", "5", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "\"name\",\"expected\",\"computed\",\"pass\"");
    for line in lines {
        assert!(line.starts_with('"') && line.ends_with('"'), "unquoted field in {line}");
    }
}

#[test]
fn table_lists_degenerate_and_two_level_families() {
    let out = run(&["table", "--m-max", "4", "--k-max", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let find = |m: u64, k: u64| {
        rows.iter()
            .find(|r| r["m"] == m && r["k"] == k)
            .unwrap_or_else(|| panic!("no row for ({m},{k})"))
    };
    assert!(find(4, 1)["note"].as_str().unwrap().contains("degenerate"));
    assert!(find(1, 2)["note"].as_str().unwrap().contains("two-level"));
    assert!(find(3, 2)["note"].is_null());
}
