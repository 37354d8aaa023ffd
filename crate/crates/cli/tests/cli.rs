use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2c2-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn g2c2(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2c2")).args(args).env("G2C2_CACHE", cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kpoly_k1_text() {
    let dir = scratch("kpoly");
    let o = g2c2(&dir, &["kpoly", "--name", "K1", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a0*a3 + a1*a2\n");
    let o = g2c2(&dir, &["kpoly", "--name", "K1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ring"], "F2");
    assert_eq!(v["terms"][0]["exps"]["a0"], 1);
    let o = g2c2(&dir, &["kpoly", "--name", "J2"]);
    assert!(stdout(&o).starts_with("(+1/1·2^-2) * (-120*c0*c6"));
    assert_eq!(g2c2(&dir, &["kpoly", "--name", "K7"]).status.code(), Some(2));
}

#[test]
fn curve_info_for_the_artin_schreier_quintic() {
    let dir = scratch("curve");
    let o = g2c2(&dir, &["curve", "--a", "1", "--b", "x^5", "--field-deg", "1", "--info"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["smooth=true", "two_rank=0", "points(F2)=3", "points(F4)=5", "L=1 + 4t^4"] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
    let o = g2c2(&dir, &["curve", "--a", "1", "--b", "x^5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["L"], serde_json::json!([1, 0, 0, 0, 4]));
}

#[test]
fn malformed_curve_is_a_usage_error() {
    let dir = scratch("usage");
    assert_eq!(g2c2(&dir, &["curve", "--a", "x^", "--b", "1"]).status.code(), Some(2));
    assert_eq!(g2c2(&dir, &["curve", "--a", "0", "--b", "1"]).status.code(), Some(2));
    assert_eq!(g2c2(&dir, &["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(g2c2(&dir, &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn hilbert_table_ends_at_weight_13() {
    let dir = scratch("hilbert");
    let o = g2c2(&dir, &["hilbert", "--max-k", "13"]);
    assert_eq!(stdout(&o).lines().last(), Some("13\t4"));
    let o = g2c2(&dir, &["hilbert", "--max-k", "13", "--table"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("k\tr\tN_k\tc"));
    assert_eq!(text.lines().last(), Some("13\t4\t1\t2"));
}

#[test]
fn verify_hilbert_writes_json() {
    let dir = scratch("verify-json");
    let out = dir.join("out.json");
    let o = g2c2(&dir, &["verify", "--suite", "hilbert", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"], serde_json::json!(["hilbert"]));
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["informational"] == true));
}

#[test]
fn verify_all_passes() {
    let dir = scratch("verify-all");
    let o = g2c2(&dir, &["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn corrupted_k3_fails_and_is_named() {
    let dir = scratch("corrupt");
    assert!(g2c2(&dir, &["cache", "build"]).status.success());
    let entry = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_string_lossy().starts_with("ktable-"))
        .unwrap();
    let mut payload: serde_json::Value =
        serde_json::from_str::<serde_json::Value>(&fs::read_to_string(entry).unwrap()).unwrap()["payload"].clone();
    let items = payload["invariants"].as_array_mut().unwrap();
    let k1 = items.iter().find(|i| i["name"] == "K1").unwrap()["body"].clone();
    items.iter_mut().find(|i| i["name"] == "K3").unwrap()["body"] = k1;
    let bad = dir.join("bad.json");
    fs::write(&bad, payload.to_string()).unwrap();

    let o = g2c2(&dir, &["verify", "--suite", "invariants", "--k-table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("anchor K3 full expansion")), "{text}");
}

#[test]
fn corrupted_cache_is_rebuilt_not_used() {
    let dir = scratch("stale");
    assert!(g2c2(&dir, &["cache", "build"]).status.success());
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"a0\":1", "\"a0\":3", 1)).unwrap();
    }
    let o = g2c2(&dir, &["cache", "build"]);
    assert!(stdout(&o).contains("K-table: Rebuilt"), "{}", stdout(&o));
    assert_eq!(stdout(&g2c2(&dir, &["kpoly", "--name", "K1"])), "a0*a3 + a1*a2\n");
}

#[test]
fn outputs_are_deterministic() {
    let dir = scratch("determinism");
    let args = ["kpoly", "--name", "K10", "--format", "json"];
    let first = g2c2(&dir, &args);
    let second = g2c2(&dir, &args);
    assert_eq!(first.stdout, second.stdout);
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for out in [&a, &b] {
        let o = g2c2(&dir, &["enumerate", "--field-deg", "1", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
