use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aqg"))
}

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_passes_on_sweedler() {
    let o = run(&["check", path_str(&spec("sweedler"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("sweedler: 79 checks, 0 failed"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn broken_spec_exits_with_falsification() {
    let o = run(&["check", path_str(&spec("broken_c2"))]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("FAIL construct.hopf"));
    assert!(out.contains("witness"));
}

#[test]
fn malformed_input_exits_with_input_error() {
    let o = run_stdin(&["check", "-"], b"{not json");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("input error"));

    let missing = run(&["check", "/nonexistent/spec.json"]);
    assert_eq!(missing.status.code(), Some(3));

    let too_big = run(&["check", path_str(&spec("fun_s3")), "--max-dim", "4"]);
    assert_eq!(too_big.status.code(), Some(3));
}

#[test]
fn json_report_is_machine_readable() {
    let o = run(&["check", path_str(&spec("broken_c2")), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let checks = v["checks"].as_array().unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_object()));
}

#[test]
fn dual_output_pipes_back_in() {
    let dual = run(&["dual", path_str(&spec("fun_c2"))]);
    assert_eq!(dual.status.code(), Some(0));
    let checked = run_stdin(&["check", "-"], &dual.stdout);
    assert_eq!(checked.status.code(), Some(0), "{}", stdout(&checked));
    assert!(stdout(&checked).contains("dual_fun_c2: 79 checks, 0 failed"));

    let again = run_stdin(&["dual", "-"], &dual.stdout);
    assert_eq!(again.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(v["dim"], 2);
}

#[test]
fn bidual_verify_passes() {
    let o = run(&["bidual", path_str(&spec("sweedler")), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let plain = run(&["bidual", path_str(&spec("grp_c2"))]);
    assert_eq!(plain.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&plain.stdout).unwrap();
}

#[test]
fn haar_of_group_algebra_is_the_identity_coefficient() {
    let o = run(&["haar", path_str(&spec("grp_s3")), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let phi: Vec<&str> = v["phi"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(phi, ["1", "0", "0", "0", "0", "0"]);
    assert_eq!(v["unimodular"], true);
}

#[test]
fn universal_on_functions_is_the_evaluation_sum() {
    let o = run(&["universal", path_str(&spec("fun_c2")), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["terms"], serde_json::json!([[0, 0, "1"], [1, 1, "1"]]));
}

#[test]
fn corep_verify_accepts_the_written_universal() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.json");
    let o = run(&["universal", path_str(&spec("sweedler")), "--output", u.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = run(&["corep", "verify", path_str(&spec("sweedler")), u.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("PASS corep.round-trip"));

    let mut file: serde_json::Value = serde_json::from_slice(&std::fs::read(&u).unwrap()).unwrap();
    file["left"][0][0] = serde_json::json!("2");
    file["right"][0][0] = serde_json::json!("2");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_vec(&file).unwrap()).unwrap();
    let b = run(&["corep", "verify", path_str(&spec("sweedler")), bad.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(2), "{}", stdout(&b));
}

#[test]
fn corep_of_wrong_size_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.json");
    run(&["universal", path_str(&spec("fun_c2")), "--output", u.to_str().unwrap()]);
    let o = run(&["corep", "verify", path_str(&spec("sweedler")), u.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["check", "--json"],
        vec!["dual"],
        vec!["haar"],
        vec!["universal"],
    ] {
        let s = spec("grp_c4");
        let mut full = args.clone();
        full.insert(1, path_str(&s));
        let a = run(&full);
        let b = run(&full);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn unknown_model_is_an_input_error() {
    assert_eq!(run(&["model", "nope"]).status.code(), Some(3));
    let o = run(&["model", "fun_c2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, std::fs::read(spec("fun_c2")).unwrap());
}
