use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env("HURWITZ_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let mut full = vec!["--no-cache"];
    full.extend_from_slice(args);
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(&full)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn hurwitz_all_engines_agree() {
    let v = json(&run(&["hurwitz", "--r", "1", "--s", "1", "--mu", "2", "--nu", "1,1", "--engine", "all"]));
    assert_eq!(v["value"], "1");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["engines_used"].as_array().unwrap().len(), 3);
}

#[test]
fn hurwitz_one_part_genus_one() {
    let v = json(&run(&["hurwitz", "--r", "2", "--s", "1", "--mu", "2", "--nu", "2"]));
    assert_eq!(v["value"], "7/24");
    assert_eq!(v["genus"], "1");
}

#[test]
fn hurwitz_connected() {
    let v = json(&run(&[
        "hurwitz", "--r", "1", "--s", "2", "--mu", "1,1", "--nu", "1,1", "--connected", "--engine", "all",
    ]));
    assert_eq!(v["agreement"], true);
    assert_eq!(v["engines_used"], serde_json::json!(["char", "patterns"]));
}

#[test]
fn precondition_failures_exit_2() {
    let out = run(&["hurwitz", "--r", "1", "--s", "1", "--mu", "2", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = run(&["hurwitz", "--r", "1", "--s", "1", "--mu", "2,x", "--nu", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hurwitz", "--r", "1", "--s", "1", "--mu", "2", "--nu", "2", "--connected", "--engine", "fock"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["chamber", "--r", "1", "--s", "2", "--point", "2,2;2,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn completed_cycle_two() {
    let out = run(&["completed-cycle", "--r", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "partition,coefficient\n1,1/24\n\"1,1\",1/2\n3,1/2\n");
}

#[test]
fn cutjoin_rules() {
    let v = json(&run(&["cutjoin", "--r", "1", "--weight", "3"]));
    let rules = v["rules"].as_array().unwrap();
    assert!(rules.iter().any(|r| r["derivatives"] == "2" && r["multiplications"] == "1,1" && r["coefficient"] == "1"));
    assert!(rules.iter().any(|r| r["derivatives"] == "1,1" && r["multiplications"] == "2" && r["coefficient"] == "1/2"));
    let v = json(&run(&["cutjoin", "--r", "2", "--weight", "6"]));
    assert!(!v["rules"].as_array().unwrap().is_empty());
}

#[test]
fn brackets_genus_zero() {
    let out = run(&["brackets", "--r", "1", "--g", "0", "--n", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "r,g,n,k,degrees,value\n1,0,2,0,\"0,1\",1\n");
}

#[test]
fn chamber_and_wallcross() {
    let v = json(&run(&["chamber", "--r", "1", "--s", "2", "--point", "3,1;2,2"]));
    assert_eq!(v["polynomial"], "2*x1");
    assert_eq!(v["structure"]["degrees_ok"], true);
    let v = json(&run(&["wallcross", "--r", "1", "--s", "2", "--wall", "1;1", "--point", "3,1;2,2", "--count", "6"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
}

#[test]
fn series_check() {
    let v = json(&run(&["series", "--which", "G", "--r", "1", "--weight", "4", "--u-cap", "3", "--check"]));
    assert_eq!(v["checks"]["brackets"], true);
    assert_eq!(v["checks"]["cut_and_join"], true);
    let out = run(&["series", "--which", "F", "--r", "1", "--check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["hurwitz", "--r", "2", "--s", "2", "--mu", "3,1", "--nu", "2,2", "--engine", "all"][..],
        &["series", "--which", "G", "--r", "2", "--weight", "4", "--format", "jsonl"][..],
        &["cutjoin", "--r", "2", "--weight", "5", "--format", "csv"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn cache_hit_and_corrupt_file() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hurwitz", "--r", "1", "--s", "2", "--mu", "3,2", "--nu", "4,1"];
    let cold = run_in(dir.path(), &args);
    assert!(cold.status.success());
    let file = dir.path().join("characters-v1-d5.json");
    assert!(file.exists());
    let warm = run_in(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);

    std::fs::write(&file, "{\"version\":1,\"table\":").unwrap();
    let again = run_in(dir.path(), &args);
    assert!(again.status.success());
    assert_eq!(cold.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("ignoring"));

    // Parseable but wrong: the value must still come out right.
    let text = std::fs::read_to_string(&file).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["table"]["values"][0][0] = Value::from(17);
    std::fs::write(&file, doc.to_string()).unwrap();
    let tampered = run_in(dir.path(), &args);
    assert!(tampered.status.success());
    assert_eq!(cold.stdout, tampered.stdout);
}
