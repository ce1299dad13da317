use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-games"))
        .args(args)
        .env_remove("LATTICE_GAMES_MAX_N")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn solve_pair_zeta_with_cu() {
    let doc = json_of(&run(&["solve", &path("zeta12.json"), "--solver=cu"]));
    assert_eq!(doc["shares"], json!({"1,2": "2/3", "1,3": "1/6", "2,3": "1/6"}));
    assert_eq!(doc["efficiencyCheck"]["sum"], json!("1"));
}

#[test]
fn solve_rank_with_su_and_split() {
    let doc = json_of(&run(&["solve", &path("rank3.json"), "--solver", "su", "--split", "equal"]));
    assert_eq!(doc["shares"], json!({"1,2": "2/3", "1,3": "2/3", "2,3": "2/3"}));
    assert_eq!(doc["nodes"], json!({"1": "2/3", "2": "2/3", "3": "2/3"}));
    let doc = json_of(&run(&["solve", &path("zeta12.json"), "--solver", "cu", "--split", &path("weights.json")]));
    assert_eq!(doc["nodes"], json!({"1": "19/36", "2": "11/36", "3": "1/6"}));
}

#[test]
fn solve_zero_game() {
    for solver in ["su", "cu", "egalitarian"] {
        let doc = json_of(&run(&["solve", &path("zero.json"), "--solver", solver]));
        assert_eq!(doc["shares"], json!({"{1}:1|2": "0", "{2}:1|2": "0", "{}:1,2": "0"}));
        assert_eq!(doc["efficiencyCheck"]["sum"], json!("0"));
    }
}

#[test]
fn solve_shapley_and_myerson() {
    let doc = json_of(&run(&["solve", &path("inessential.json"), "--solver", "shapley"]));
    assert_eq!(doc["shares"], json!({"1": "1", "2": "1/2", "3": "2"}));
    let doc = json_of(&run(&["solve", &path("inessential.json"), "--solver", "myerson", "--graph", ""]));
    assert_eq!(doc["shares"], json!({"1": "1", "2": "1/2", "3": "2"}));
}

#[test]
fn csv_output_marks_decimals() {
    let out = run(&["solve", &path("zeta12.json"), "--solver", "cu", "--format", "csv", "--decimal"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,key,value,approx_decimal"));
    assert_eq!(lines.next(), Some("atom,\"1,2\",2/3,0.6666666666666666"));
    let plain = run(&["solve", &path("zeta12.json"), "--solver", "cu", "--format", "csv"]);
    assert!(String::from_utf8(plain.stdout).unwrap().starts_with("kind,key,value\n"));
}

#[test]
fn bottom_normalization_flag() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("shifted.json");
    std::fs::write(
        &file,
        r#"{"lattice": "partitions", "n": 2, "values": {"1|2": "3", "1,2": "5"}}"#,
    )
    .unwrap();
    let f = file.to_string_lossy().into_owned();
    let doc = json_of(&run(&["solve", &f]));
    assert_eq!(doc["shares"], json!({"1,2": "2"}));
    assert_eq!(doc["bottomShift"], json!("3"));
    let doc = json_of(&run(&["solve", &f, "--no-bottom-normalize"]));
    assert_eq!(doc["shares"], json!({"1,2": "2"}));
    assert_eq!(doc["bottomShift"], json!("0"));
    assert!(doc["bottomNormalization"].as_str().unwrap().starts_with("disabled"));
    assert_eq!(json_of(&run(&["core", &f]))["status"], json!("nonempty"));
    assert_eq!(json_of(&run(&["core", &f, "--no-bottom-normalize"]))["status"], json!("empty"));
}

#[test]
fn core_reports() {
    let doc = json_of(&run(&["core", &path("supermodular_empty_core.json")]));
    assert_eq!(doc["status"], json!("empty"));
    assert_eq!(doc["supermodular"], json!(true));
    assert_eq!(doc["totallyPositive"], json!(false));
    let doc = json_of(&run(&["core", &path("size4.json")]));
    assert_eq!(doc["status"], json!("nonempty"));
    let witness = doc["witness"].as_object().unwrap();
    assert_eq!(witness.len(), 6);
    assert!(witness.values().all(|v| v == "1"));
    let doc = json_of(&run(&["core", &path("inessential.json")]));
    assert_eq!(doc["witness"], json!({"1": "1", "2": "1/2", "3": "2"}));
}

#[test]
fn core_membership_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("even.json");
    std::fs::write(&file, r#"{"shares": {"1,2": "2/3", "1,3": "2/3", "2,3": "2/3"}}"#).unwrap();
    let doc = json_of(&run(&["core", &path("supermodular_empty_core.json"), "--check", &file.to_string_lossy()]));
    assert_eq!(doc["violated"], json!(["1,2|3", "1,3|2", "1|2,3"]));
}

#[test]
fn netshare_periods() {
    let doc = json_of(&run(&["netshare", &path("trace.json")]));
    let periods = doc["periods"].as_array().unwrap();
    assert_eq!(periods[0]["edgeShares"], json!({"1,2": "4", "1,3": "1", "2,3": "0"}));
    assert_eq!(periods[0]["nodeShares"], json!({"1": "5/2", "2": "2", "3": "1/2"}));
    assert_eq!(periods[0]["sharesEqualVolumes"], json!(true));
    assert_eq!(periods[1]["edgeShares"], json!({"1,2": "4", "1,3": "0", "2,3": "0"}));
    assert_eq!(periods[2]["edgeShares"], json!({"1,2": "0", "1,3": "0", "2,3": "0"}));
}

#[test]
fn netshare_csv_with_clusters() {
    let doc = json_of(&run(&["netshare", &path("trace.csv"), "--cluster-file", &path("cluster.json")]));
    assert_eq!(doc["n"], json!(4));
    let t2 = &doc["periods"][1];
    assert_eq!(t2["cluster"], json!("1,2|3,4"));
    assert_eq!(t2["edgeShares"]["1,2"], json!("5/2"));
    assert_eq!(t2["edgeShares"]["3,4"], json!("3/2"));
    assert_eq!(t2["sharesEqualVolumes"], json!(true));
}

#[test]
fn worked_examples_gate() {
    let out = run(&["worked-examples"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().ends_with("0 failed, 0 skipped"));
    let out = run(&["paper-examples", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL  cu of the [12] zeta game on P^3"));
    let out = run(&["--max-n", "3", "worked-examples"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("SKIP  chain ratios sum to one for every atom of P^4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, r#"{"lattice": "partitions", "n": 3, "values": {"1|2|3": "0"}}"#).unwrap();
    let out = run(&["solve", &partial.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1,2|3"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(run(&["core", &garbage.to_string_lossy()]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/game.json"]).status.code(), Some(2));
    assert_eq!(run(&["solve", &path("zeta12.json"), "--solver", "banzhaf"]).status.code(), Some(2));
    assert_eq!(run(&["solve", &path("zeta12.json"), "--solver", "shapley"]).status.code(), Some(2));

    let negative = dir.path().join("negative.json");
    std::fs::write(&negative, r#"{"periods": [{"traffic": {"1,2": "-1"}}]}"#).unwrap();
    assert_eq!(run(&["netshare", &negative.to_string_lossy()]).status.code(), Some(2));

    assert_eq!(run(&["solve", &path("size4.json"), "--max-n", "3"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_lattice-games"))
        .args(["solve", &path("size4.json")])
        .env("LATTICE_GAMES_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap is 3"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["solve", "zeta12.json", "--solver", "cu"],
        vec!["core", "supermodular_empty_core.json"],
        vec!["netshare", "trace.json", "--format", "csv", "--decimal"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = path(&args[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&refs);
        let second = run(&refs);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout);
    }
}
