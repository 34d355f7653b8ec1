use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn knotoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotoid")).args(args).output().unwrap()
}

fn fixture(rel: &str) -> String {
    fixtures().join(rel).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn trivial_winding_homology() {
    let o = knotoid(&["compute", "--input", &fixture("pd/trivial.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"ranks":[[0,0,0,1]]}"#);
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_knotoid"))
        .args(["compute", "--input", "-", "--invariant", "jones"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"crossings":[[1,3,2,2]],"open":[1,2,3]}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(json(&o)["terms"], serde_json::json!([{"coef": 1, "exp": [0]}]));
}

#[test]
fn turaev_does_not_separate_k3_and_k4() {
    let run = |k: &str| {
        json(&knotoid(&["compute", "--input", &fixture(&format!("pd/{k}.json")), "--invariant", "turaev"]))
    };
    assert_eq!(run("K3"), run("K4"));
    let w = |k: &str| json(&knotoid(&["compute", "--input", &fixture(&format!("pd/{k}.json")), "--reduce"]));
    assert_ne!(w("K3"), w("K4"));
}

#[test]
fn several_invariants_are_keyed() {
    let o = knotoid(&["compute", "--input", &fixture("pd/K5.json"), "--invariant", "kh,jones", "--reduce"]);
    let v = json(&o);
    assert!(v.get("kh").is_some() && v.get("jones").is_some());
    let text = knotoid(&[
        "compute",
        "--input",
        &fixture("pd/K5.json"),
        "--invariant",
        "bracket",
        "--format",
        "text",
    ]);
    assert!(stdout(&text).starts_with("[bracket]\n"));
}

#[test]
fn refined_polynomial_of_a_bifoil() {
    let o = knotoid(&[
        "compute",
        "--input",
        &fixture("geometric/B2.json"),
        "--invariant",
        "refined",
        "--format",
        "text",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    for term in ["A^4", "A^6*l^2", "A^10*l^2"] {
        assert!(text.contains(term), "{text}");
    }
    // The refined invariants need coordinates.
    let pd = knotoid(&["compute", "--input", &fixture("pd/K1.json"), "--invariant", "refined"]);
    assert_eq!(pd.status.code(), Some(1));
}

#[test]
fn cut_reproduces_the_k1_fixture() {
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(fixtures().join("manifest.json")).unwrap()).unwrap();
    let dt: Vec<String> =
        manifest["knots"]["11a_138"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let o = knotoid(&["transform", "--op", "cut", "--dt", &dt.join(","), "--moves", "1", "--mode", "over"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stored: serde_json::Value =
        serde_json::from_slice(&std::fs::read(fixtures().join("pd/K1.json")).unwrap()).unwrap();
    assert_eq!(json(&o), stored);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(knotoid(&["compute", "--input", missing.to_str().unwrap()]).status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"crossings":[[1,7,2,2]],"open":[1,2,3]}"#).unwrap();
    let o = knotoid(&["compute", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains('7'));
    // A multi-knotoid has no local μ formula.
    let multi = dir.path().join("multi.json");
    std::fs::write(&multi, r#"{"crossings":[],"open":[1],"closed":[[2]]}"#).unwrap();
    assert!(knotoid(&["compute", "--input", multi.to_str().unwrap()]).status.success());
    assert_eq!(knotoid(&["bogus"]).status.code(), Some(2));
}

#[test]
fn selftest_names_a_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("fixtures");
    copy_dir(&fixtures(), &copy);
    let ok = Command::new(env!("CARGO_BIN_EXE_knotoid"))
        .args(["selftest", "--quick"])
        .env("KNOTOID_FIXTURES", &copy)
        .output()
        .unwrap();
    assert!(ok.status.success(), "{}", stdout(&ok));
    let path = copy.join("expected/trivial.json");
    std::fs::write(&path, r#"{"ranks":[[0,0,0,2]]}"#).unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_knotoid"))
        .args(["selftest", "--quick"])
        .env("KNOTOID_FIXTURES", &copy)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let report = stdout(&bad);
    assert!(report.lines().any(|l| l.starts_with("trivial ") && l.contains(" FAIL")), "{report}");
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}
