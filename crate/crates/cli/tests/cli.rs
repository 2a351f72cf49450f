use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn m22v(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m22v"))
        .args(args)
        .env_remove("M22V_DATA")
        .env_remove("M22V_CONFIG")
        .output()
        .unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn list_has_every_claim() {
    let out = m22v(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 17);
    for id in ["elkies-count", "split-6-12M22", "orbit-1-21", "feit-f-indices"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
}

#[test]
fn unknown_claim_is_an_error() {
    let out = m22v(&["verify", "no-such-claim", "--data", data().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no-such-claim"));
}

#[test]
fn missing_data_is_an_error() {
    let out = m22v(&["verify", "newton-fig1", "--data", "/nonexistent/m22v-data"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_claim_report_shape() {
    let out = m22v(&["verify", "newton-fig1", "--data", data().to_str().unwrap(), "--seed", "5"]);
    assert!(out.status.success());
    let r = reports(&out);
    assert_eq!(r.len(), 1);
    let r = &r[0];
    assert_eq!(r["claim_id"], "newton-fig1");
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["computed"], serde_json::json!([["-2", 4], ["-1/3", 3], ["0", 1]]));
    assert_eq!(r["expected"]["provenance"], "stated");
    assert!(r["runtime_ms"].is_u64());
    assert!(String::from_utf8(out.stderr).unwrap().contains("1 passed, 0 failed, 0 unverified"));
}

#[test]
fn env_config_and_flags_layer() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("m22v.conf");
    std::fs::write(&conf, "seed = 11\nlambda = 101\n").unwrap();
    let json = dir.path().join("out.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_m22v"))
        .args(["verify", "elkies-bound", "--config", conf.to_str().unwrap()])
        .args(["--json", json.to_str().unwrap(), "--seed", "12"])
        .env("M22V_DATA", data())
        .output()
        .unwrap();
    // a non-default λ leaves the bound without a reference value
    assert_eq!(out.status.code(), Some(0));
    let line = std::fs::read_to_string(&json).unwrap();
    let r: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(r["seed"], 12);
    assert_eq!(r["computed"]["lambda"], 101);
    assert_eq!(r["status"], "UNVERIFIED");
    assert!(String::from_utf8(out.stderr).unwrap().contains("0 failed, 1 unverified"));

    std::fs::write(&conf, "no_such_key = 1\n").unwrap();
    let out = m22v(&["verify", "newton-fig1", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_claim_sets_the_exit_code() {
    // a corrupted g~ no longer divides g(0, X)
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("poly");
    std::fs::create_dir_all(&poly).unwrap();
    std::fs::create_dir_all(dir.path().join("groups")).unwrap();
    for f in ["f.bipoly", "g.bipoly", "t_of_s.poly"] {
        std::fs::copy(data().join("poly").join(f), poly.join(f)).unwrap();
    }
    let text = std::fs::read_to_string(data().join("poly/gtilde.poly")).unwrap();
    let text = text.replace("0:12301875/1", "0:12301876/1");
    std::fs::write(poly.join("gtilde.poly"), text).unwrap();
    let out = m22v(&["verify", "gtilde-divides", "--data", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reports(&out)[0]["status"], "FAIL");
}

/// Everything except `runtime_ms`.
fn strip_runtime(out: &Output) -> Vec<Value> {
    reports(out)
        .into_iter()
        .map(|mut r| {
            r.as_object_mut().unwrap().remove("runtime_ms");
            r
        })
        .collect()
}

#[test]
fn verify_all_is_deterministic() {
    // a small λ keeps the point count short; everything else runs as by default
    let dir = data();
    let args = ["verify", "all", "--data", dir.to_str().unwrap(), "--seed", "3", "--lambda", "10007"];
    let a = m22v(&args);
    let b = m22v(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let (ra, rb) = (strip_runtime(&a), strip_runtime(&b));
    assert_eq!(ra.len(), 17);
    assert_eq!(serde_json::to_string(&ra).unwrap(), serde_json::to_string(&rb).unwrap());
    let unverified: Vec<&str> = ra
        .iter()
        .filter(|r| r["status"] == "UNVERIFIED")
        .map(|r| r["claim_id"].as_str().unwrap())
        .collect();
    assert_eq!(unverified, vec!["elkies-bound", "elkies-count", "elkies-verdict"]);
}
