use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chamber-iso"));
    c.env_remove("CHAMBER_ISO_BUDGET");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const THREE_LINES: &str = r#"{
  "d": 2,
  "hyperplanes": [
    {"normal": ["0", "1"], "offset": "1"},
    {"normal": ["-1", "1"], "offset": "0"},
    {"normal": ["1", "1"], "offset": "0"}
  ]
}"#;

#[test]
fn gen_random_replays_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "--family", "random", "--d", "2", "--n", "5", "--seed", "7", "-o"];
    let a = run(&[&args[..], &["a.json"]].concat(), dir.path());
    let b = run(&[&args[..], &["b.json"]].concat(), dir.path());
    assert!(a.status.success() && b.status.success());
    let fa = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(fa, std::fs::read(dir.path().join("b.json")).unwrap());
    let summary = json(&a);
    assert_eq!(summary["n"], 5);
    assert!(summary["general_position"]["certified"].is_object());
    let file: serde_json::Value = serde_json::from_slice(&fa).unwrap();
    assert_eq!(file["hyperplanes"].as_array().unwrap().len(), 5);
}

#[test]
fn gen_grid_and_circle() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(
        &["gen", "--family", "grid", "--counts", "3,3", "-o", "g.json"],
        dir.path(),
    );
    assert!(g.status.success());
    assert_eq!(json(&g)["n"], 6);
    let c = run(&["gen", "--family", "circle", "--k", "5", "-o", "c.json"], dir.path());
    assert!(c.status.success());
    assert_eq!(json(&c)["n"], 10);
    assert!(json(&c)["general_position"]["violated"].is_object());
}

#[test]
fn chambers_graph_and_strata() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.json"), THREE_LINES).unwrap();
    let ch = run(&["chambers", "t.json"], dir.path());
    assert!(ch.status.success());
    assert_eq!(json(&ch)["count"], 7);
    let g = run(&["graph", "t.json", "--format", "csv"], dir.path());
    assert_eq!(String::from_utf8(g.stdout).unwrap().lines().count(), 9);
    let s = run(&["strata", "t.json", "--chambers", "-++,+++,--+"], dir.path());
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    let v = json(&s);
    assert_eq!(v["boundary"], 5);
    assert_eq!(v["stratification"]["support"].as_array().unwrap().len(), 3);
}

#[test]
fn conjecture_suite_emits_one_line_per_size() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &[
            "gen", "--family", "random", "--d", "2", "--n", "5", "--seed", "7", "-o", "a.json",
        ],
        dir.path(),
    );
    let out = run(
        &["verify", "a.json", "--suite", "conjecture", "--max-size", "half"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 8);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        "{\"d\": 2, \"hyperplanes\": [{\"normal\": [\"x\"]}]}",
    )
    .unwrap();
    assert_eq!(run(&["chambers", "bad.json"], dir.path()).status.code(), Some(3));
    assert_eq!(run(&["chambers", "missing.json"], dir.path()).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(3));
    run(
        &[
            "gen", "--family", "random", "--d", "2", "--n", "5", "--seed", "7", "-o", "a.json",
        ],
        dir.path(),
    );
    let capped = bin()
        .args(["verify", "a.json", "--suite", "conjecture"])
        .env("CHAMBER_ISO_BUDGET", "10")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(
        run(
            &[
                "verify",
                "--suite",
                "appendix",
                "--d-range",
                "2..3",
                "--n-range",
                "5..9"
            ],
            dir.path()
        )
        .status
        .code(),
        Some(0)
    );
}

#[test]
fn report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["report", "--seed", "5"], dir.path());
    let b = run(&["report", "--seed", "5", "--threads", "2"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["violations"], 0);
}

#[test]
fn mixing_single_instance() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.json"), THREE_LINES).unwrap();
    let out = run(&["mixing", "t.json", "--eps", "0.25"], dir.path());
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vertices"], 7);
    assert_eq!(v["cheeger_holds"], true);
    assert!(v["t_mix"]["0.25"].as_u64().unwrap() >= 1);
}
