use std::path::PathBuf;
use std::process::{Command, Output};

fn g2verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2verify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn without_wall_time(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("wall_ms");
    v
}

#[test]
fn rootsys_passes() {
    let o = g2verify(&["run", "rootsys"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rootsys: 35 passed, 0 failed"));
}

#[test]
fn localzeta_passes_with_given_bounds() {
    let o = g2verify(&["run", "localzeta", "--p", "2,3,5", "--val-bound", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(g2verify(&["run", "bogus"]).status.code(), Some(2));
    assert_eq!(g2verify(&["run", "rootsys", "--p", "6"]).status.code(), Some(2));
    assert_eq!(g2verify(&["run", "rootsys", "--weights", "3"]).status.code(), Some(2));
    assert_eq!(g2verify(&["enumerate", "subrings", "--bound", "100000"]).status.code(), Some(2));
}

#[test]
fn failing_case_exits_one() {
    // The normalisation identity holds only up to a constant, so this suite reports failures.
    let o = g2verify(&["run", "gammaledger", "--weights", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = v["cases"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["expected"], "constant 1");
    assert_eq!(failed[0]["actual"], "2*pi^(4)");
}

#[test]
fn json_schema_and_determinism() {
    let args = ["run", "cubicforms", "--format", "json", "--samples", "30", "--seed", "7", "--p", "2,3"];
    let a = stdout(&g2verify(&args));
    let b = stdout(&g2verify(&args));
    assert_eq!(without_wall_time(&a), without_wall_time(&b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suite"], "cubicforms");
    assert_eq!(v["config"]["seed"], 7);
    assert!(v["wall_ms"].is_u64());
    let cases = v["cases"].as_array().unwrap();
    for c in cases {
        for key in ["id", "status", "expected", "actual", "anchor"] {
            assert!(c[key].is_string(), "missing {} in {}", key, c);
        }
    }
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let s = &v["summary"];
    let total = s["pass"].as_u64().unwrap() + s["fail"].as_u64().unwrap() + s["skip"].as_u64().unwrap();
    assert_eq!(total as usize, cases.len());
}

#[test]
fn config_file_with_flag_override() {
    let path = tmp("suite.conf");
    std::fs::write(&path, "primes = 3\nseed = 11\nformat = json\n").unwrap();
    let o = g2verify(&["run", "rootsys", "--config", path.to_str().unwrap(), "--seed", "12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["primes"], serde_json::json!([3]));
    assert_eq!(v["config"]["seed"], 12);
}

#[test]
fn out_path() {
    let path = tmp("rootsys.txt");
    let o = g2verify(&["run", "rootsys", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("PASS rootsys.word.reduced"));
    let bad = tmp("missing-dir/report.txt");
    assert_eq!(g2verify(&["run", "rootsys", "--out", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn enumerations() {
    let subrings = stdout(&g2verify(&["enumerate", "subrings", "--bound", "10"]));
    let rows: Vec<&str> = subrings.lines().collect();
    assert_eq!(rows[0], "index,count,contents_histogram");
    assert_eq!(rows.len(), 11);
    assert!(rows[1].starts_with("1,1,"));
    assert!(rows[2].starts_with("2,3,"));

    let cosets = stdout(&g2verify(&["enumerate", "cosets", "--p", "2", "--val-bound", "2"]));
    assert_eq!(cosets.lines().count(), 1 + 11);

    let contents = stdout(&g2verify(&["enumerate", "sublattice-contents", "--form", "1,0,0,0", "--p", "2"]));
    assert_eq!(contents, "content,count\n-1,2\n2,1\n");
}
