use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pairs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../pairs")
}

fn modpic(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modpic"))
        .args(args)
        .env("MODPIC_CACHE", cache)
        .env_remove("MODPIC_CACHE_VERSION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_pair(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> String {
    pairs().join(name).to_str().unwrap().to_string()
}

#[test]
fn group_report_on_the_line_with_infinity() {
    let tmp = TempDir::new().unwrap();
    let o = modpic(tmp.path(), &["group", "-i", &fixture("p1-inf-f7.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["finite_part"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let zero = write_pair(
        dir,
        "zero.json",
        r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 0}]}"#,
    );
    let unknown = write_pair(
        dir,
        "unknown.json",
        r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [], "colour": 1}"#,
    );
    let big = write_pair(
        dir,
        "big.json",
        r#"{"characteristic": 5, "extension_degree": 2, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 8}, {"place": "t+1", "mult": 8}]}"#,
    );
    let f3 = fixture("p1-2t-f3.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["group", "-i", &f3], 0),
        (vec!["group", "-i", &zero], 2),
        (vec!["group", "-i", &unknown], 2),
        (vec!["group", "-i", "/nonexistent/pair.json"], 2),
        (vec!["class", "-i", &f3, "[t-1"], 2),
        (vec!["verify", "no-such-suite"], 2),
        (vec!["verify", "key-lem", "--trials", "0"], 2),
        (vec!["group", "-i", &big, "--no-cache"], 3),
        (vec!["class", "-i", &f3, "[t]"], 4),
        (vec!["verify", "torsion-iso", "--trials", "30", "--inject-fault"], 1),
        (vec!["verify", "key-lem", "--trials", "20"], 0),
    ];
    for (args, code) in cases {
        let o = modpic(dir, &args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn class_of_a_degree_zero_cycle() {
    let tmp = TempDir::new().unwrap();
    let o = modpic(tmp.path(), &["class", "-i", &fixture("p1-2t-f3.json"), "[t-1] - [t-2]", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 0);
    assert_eq!(v["is_zero"], false);
    assert_eq!(v["coordinate_moduli"], serde_json::json!(["3"]));
}

#[test]
fn second_run_hits_the_cache_with_identical_output() {
    let tmp = TempDir::new().unwrap();
    let args = ["group", "-i", &fixture("e-x3x-2o-f5.json"), "--json", "--timing"];
    let first = modpic(tmp.path(), &args);
    let second = modpic(tmp.path(), &args);
    assert!(stderr(&first).contains("cache: miss"));
    assert!(stderr(&second).contains("cache: hit"));
    assert_eq!(first.stdout, second.stdout);

    let bypass = modpic(tmp.path(), &["group", "-i", &fixture("e-x3x-2o-f5.json"), "--json", "--no-cache", "--timing"]);
    assert!(!stderr(&bypass).contains("cache:"));
    assert_eq!(first.stdout, bypass.stdout);
}

#[test]
fn version_bump_misses() {
    let tmp = TempDir::new().unwrap();
    let args = ["group", "-i", &fixture("p1-2t-f3.json"), "--timing"];
    modpic(tmp.path(), &args);
    let bumped = Command::new(env!("CARGO_BIN_EXE_modpic"))
        .args(args)
        .env("MODPIC_CACHE", tmp.path())
        .env("MODPIC_CACHE_VERSION", "99.0.0")
        .output()
        .unwrap();
    assert!(stderr(&bumped).contains("cache: miss"), "{}", stderr(&bumped));
}

#[test]
fn truncated_entry_is_reported_and_recomputed() {
    let tmp = TempDir::new().unwrap();
    let args = ["group", "-i", &fixture("p1-3t-f2.json"), "--json", "--timing"];
    let first = modpic(tmp.path(), &args);
    let entries: Vec<PathBuf> = std::fs::read_dir(tmp.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let text = std::fs::read(&entries[0]).unwrap();
    std::fs::write(&entries[0], &text[..text.len() / 2]).unwrap();

    let second = modpic(tmp.path(), &args);
    assert_eq!(second.status.code(), Some(0));
    assert!(stderr(&second).contains("warning: ignoring corrupt cache entry"), "{}", stderr(&second));
    assert!(stderr(&second).contains("cache: miss"));
    assert_eq!(first.stdout, second.stdout);

    let third = modpic(tmp.path(), &args);
    assert!(stderr(&third).contains("cache: hit"));
}

#[test]
fn tampered_payload_fails_its_checksum() {
    let tmp = TempDir::new().unwrap();
    let args = ["group", "-i", &fixture("p1-t-t1-f5.json")];
    let first = modpic(tmp.path(), &args);
    let entry = std::fs::read_dir(tmp.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&entry).unwrap();
    std::fs::write(&entry, text.replace("free rank", "free tank")).unwrap();
    let second = modpic(tmp.path(), &args);
    assert!(stderr(&second).contains("warning: ignoring corrupt cache entry"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_output_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    for args in [
        vec!["group", "-i", &fixture("p1-q-2t-3t1.json"), "--json", "--no-cache"],
        vec!["pi", "-i", &fixture("p1-2t-f3.json"), "[t-1] - [t-2]", "--json", "--no-cache"],
        vec!["verify", "norm-compat", "--trials", "25", "--seed", "9", "--json"],
    ] {
        let a = modpic(tmp.path(), &args);
        let b = modpic(tmp.path(), &args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn failure_payload_replays_to_the_same_failure() {
    let tmp = TempDir::new().unwrap();
    let o = modpic(tmp.path(), &["verify", "torsion-iso", "--trials", "30", "--seed", "4", "--inject-fault", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failure = report["results"].as_array().unwrap().iter().find(|r| r["passed"] == false).unwrap();
    let payload = failure["replay"].to_string();

    let inline = modpic(tmp.path(), &["verify", "--replay", &payload, "--json"]);
    assert_eq!(inline.status.code(), Some(1));
    let again: serde_json::Value = serde_json::from_str(&stdout(&inline)).unwrap();
    assert_eq!(again["results"][0]["instance"], failure["instance"]);
    assert_eq!(again["results"][0]["detail"], failure["detail"]);

    let file = write_pair(tmp.path(), "payload.json", &payload);
    let from_file = modpic(tmp.path(), &["verify", "--replay", &file]);
    assert_eq!(from_file.status.code(), Some(1));
    assert!(stdout(&from_file).contains("FAILED"));

    let junk = modpic(tmp.path(), &["verify", "--replay", "{\"suite\": 1}"]);
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn places_listing() {
    let tmp = TempDir::new().unwrap();
    let o = modpic(tmp.path(), &["places", "--field", "2", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let listed: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(listed.len(), 4);
    assert!(listed.iter().any(|p| p == "inf"));
    assert!(listed.iter().any(|p| p.contains("t^2+t+1")));

    let e = modpic(tmp.path(), &["places", "--field", "5", "--elliptic", "1,0"]);
    assert_eq!(stdout(&e).lines().count(), 4);

    let bad = modpic(tmp.path(), &["places", "--field", "6"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reads_pairs_from_stdin() {
    use std::io::Write;
    let tmp = TempDir::new().unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_modpic"))
        .args(["group", "-i", "-", "--json", "--no-cache"])
        .env("MODPIC_CACHE", tmp.path())
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(fixture("p1-2t-f3.json")).unwrap().as_slice()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"finite_part\": [\n    3\n  ]"));
}
