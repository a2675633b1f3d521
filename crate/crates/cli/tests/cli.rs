use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn recon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const P5: &str = "DhC";
const C6: &str = "EhEG";

#[test]
fn deck_of_c4() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g6", "Cr\n");
    let o = recon(&["deck", &g]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "# vertex deck\nBW ×4\n");
}

#[test]
fn deck_json_round_trips_through_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p5.g6", P5);
    let d = dir.path().join("p5.json");
    let o = recon(&["deck", &g, "--format", "json", "-o", d.to_str().unwrap()]);
    assert!(o.status.success());
    let o = recon(&[
        "reconstruct",
        d.to_str().unwrap(),
        "--k",
        "1",
        "--verify",
        &g,
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["profile"], v["direct"]);
}

#[test]
fn counts() {
    let o = recon(&["count", "--pattern", "Bg", "--host", "Cr", "--vertex", "0"]);
    assert_eq!(stdout(&o).trim(), "3");
    let o = recon(&[
        "count",
        "--pattern",
        "Bg",
        "--root",
        "1",
        "--host",
        "Cr",
        "--vertex",
        "0",
    ]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = recon(&["count", "--pattern", "C~", "--host", "Bw"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
    let o = recon(&[
        "count",
        "--pattern",
        "Bw",
        "--host",
        "C~",
        "--mode",
        "induced",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 4);
    assert_eq!(v["mode"], "induced");
}

#[test]
fn edge_profile_of_c6() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c6.g6", C6);
    let d = dir.path().join("c6.deck");
    assert!(
        recon(&["deck", "--kind", "edge", &g, "-o", d.to_str().unwrap()])
            .status
            .success()
    );
    let o = recon(&[
        "reconstruct",
        d.to_str().unwrap(),
        "--k",
        "2",
        "--verify",
        &g,
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("verdict: equal\n"));
    let o = recon(&["reconstruct", d.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&recon(&["radius", d.to_str().unwrap()])).trim(), "3");
}

#[test]
fn precondition_guard() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p5.g6", P5);
    let d = dir.path().join("p5.deck");
    recon(&["deck", &g, "-o", d.to_str().unwrap()]);
    let o = recon(&[
        "reconstruct",
        d.to_str().unwrap(),
        "--k",
        "3",
        "--verify",
        &g,
    ]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("radius 2"));
    assert_eq!(stdout(&o).trim(), "verdict: precondition-failed");
}

#[test]
fn inconsistent_deck_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // Deck of P5 run at k = 2, past its radius.
    let g = write(dir.path(), "p5.g6", P5);
    let d = dir.path().join("p5.deck");
    recon(&["deck", &g, "-o", d.to_str().unwrap()]);
    let trace = dir.path().join("trace.json");
    let o = recon(&[
        "reconstruct",
        d.to_str().unwrap(),
        "--k",
        "2",
        "--format",
        "json",
        "--trace-out",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let t: Value = serde_json::from_str(&fs::read_to_string(trace).unwrap()).unwrap();
    assert!(t["steps"].as_array().is_some_and(|s| !s.is_empty()));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.deck", "# vertex deck\nBW ×4\nB! ×1\n");
    let o = recon(&["reconstruct", &bad, "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn sweeps() {
    let o = recon(&["sweep", "identities", "--n", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failures"));
    let o = recon(&["sweep", "roundtrip", "--n", "6", "--jobs", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failures"));
    let o = recon(&[
        "sweep", "search", "--n", "7", "--kind", "edge", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["details"]["pairs"], 5);
}

#[test]
fn catalog_file_feeds_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("n5.g6");
    let o = recon(&["catalog", "--n", "5", "-o", cat.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&cat).unwrap().lines().count(), 34);
    let o = recon(&["sweep", "identities", "--catalog", cat.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("identities: 34 graphs"));
}

#[test]
fn output_is_deterministic() {
    let a = recon(&["catalog", "--n", "6", "--connected"]);
    let b = recon(&["catalog", "--n", "6", "--connected", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 112);
}
