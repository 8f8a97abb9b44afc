use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustope"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn workspace() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("a2.json"), "[[0,1],[-1,0]]").unwrap();
    fs::write(dir.path().join("a3.json"), r#"{"n":3,"rows":[["0","1","0"],["-1","0","1"],["0","-1","0"]]}"#).unwrap();
    fs::write(dir.path().join("example.json"), "[[0,2,-4],[-2,0,2],[4,-2,0]]").unwrap();
    fs::write(dir.path().join("cyclic.json"), "[[0,1,-1],[-1,0,1],[1,-1,0]]").unwrap();
    dir
}

fn rows(m: &[&[i64]]) -> Value {
    json!({
        "n": m.len(),
        "rows": m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
    })
}

#[test]
fn matrix_mutate_a2() {
    let dir = workspace();
    let out = run(dir.path(), &["matrix-mutate", "--B", "a2.json", "--k", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), rows(&[&[0, -1], &[1, 0]]));
}

#[test]
fn fan_gsets_example() {
    let dir = workspace();
    let out = run(dir.path(), &["fan-gsets", "--B", "example.json", "--path", "2,3,1", "--lambda", "-1,-1,1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let vertices: Vec<u64> = v.as_array().unwrap().iter().map(|s| s["vertex"].as_u64().unwrap()).collect();
    assert_eq!(vertices, [3, 2, 1, 0]);
    assert_eq!(v[0]["matrices"][0], rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    assert_eq!(v[3]["matrices"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = workspace();
    let ok = run(dir.path(), &["verify", "dualities", "--B", "a2.json", "--path", "1,2,1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout_json(&ok).as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    for identity in ["sign-coherence", "sign-synchronicity", "gbc", "polytope-routes", "edges-are-cvectors"] {
        let out = run(dir.path(), &["verify", identity, "--B", "a3.json", "--path", "1,3,2"]);
        assert_eq!(out.status.code(), Some(0), "{identity}");
        assert_eq!(stdout_json(&out)["status"], "pass");
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = workspace();
    for args in [
        vec!["matrix-mutate", "--B", "a2.json", "--k", "3"],
        vec!["matrix-mutate", "--B", "missing.json", "--k", "1"],
        vec!["no-such-command"],
        vec!["fan-gsets", "--B", "a2.json", "--lambda", "1,2"],
    ] {
        let out = run(dir.path(), &args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    fs::write(dir.path().join("bad.json"), "[[0,1],[1,0]]").unwrap();
    let out = run(dir.path(), &["cvec", "--B", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "NotSignSkewSymmetric");
}

#[test]
fn catalog_round_trip_through_files() {
    let dir = workspace();
    let out = run(dir.path(), &["enumerate", "--B", "a3.json", "--finite", "--out", "cat.json"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let cat: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("cat.json")).unwrap()).unwrap();
    assert_eq!(cat["seeds"].as_array().unwrap().len(), 14);
    assert_eq!(cat["variables"].as_array().unwrap().len(), 9);
    let deg = run(dir.path(), &["degree", "--catalog", "cat.json", "--f", "1", "--x", "1"]);
    assert_eq!(stdout_json(&deg)["degree"], -1);
    let compat = run(dir.path(), &["compat", "--catalog", "cat.json", "--g", "1,0,0", "--h", "0,0,1"]);
    assert_eq!(stdout_json(&compat)["compatible"], true);
    let gone = run(dir.path(), &["degree", "--catalog", "cat.json", "--f", "10", "--x", "1"]);
    assert_eq!(gone.status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let dir = workspace();
    let args = ["verify", "gbc", "--random", "5", "--seed", "9", "--ranks", "2,3", "--max-len", "5"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(dir.path(), &["seed-mutate", "--B", "example.json", "--path", "2,3,1"]);
    let s2 = run(dir.path(), &["seed-mutate", "--B", "example.json", "--path", "2,3,1"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn seed_queries() {
    let dir = workspace();
    let g_grade = stdout_json(&run(dir.path(), &["gvec", "--B", "example.json", "--path", "2,3,1"]));
    for eps in ["+", "-"] {
        let g_rec = stdout_json(&run(dir.path(), &["gvec", "--B", "example.json", "--path", "2,3,1", "--eps", eps]));
        assert_eq!(g_rec, g_grade);
    }
    let c = stdout_json(&run(dir.path(), &["cvec", "--B", "a2.json", "--path", "1"]));
    assert_eq!(c, rows(&[&[-1, 1], &[0, 1]]));
    let d = stdout_json(&run(dir.path(), &["dvec", "--B", "a2.json", "--path", "1"]));
    assert_eq!(d, json!([[1, 0], [0, -1]]));
    let f = stdout_json(&run(dir.path(), &["fpoly", "--B", "a2.json", "--path", "1"]));
    assert_eq!(f[0].as_array().unwrap().len(), 2);
}

#[test]
fn polytope_mutate_segment() {
    let dir = workspace();
    fs::write(dir.path().join("pt.json"), r#"{"n":2,"points":[{"p":[0,0],"w":"1"}]}"#).unwrap();
    let out = run(dir.path(), &["polytope-mutate", "--B", "a2.json", "--polytope", "pt.json", "--h", "1,0", "--k", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["h"], json!(["-1", "0"]));
    assert_eq!(v["polytope"]["points"].as_array().unwrap().len(), 2);
}

#[test]
fn fan_ng_a2() {
    let dir = workspace();
    let v = stdout_json(&run(dir.path(), &["fan-ng", "--B", "a2.json", "--finite"]));
    assert_eq!(v["cones"].as_array().unwrap().len(), 5);
    assert_eq!(v["complete"], true);
}
