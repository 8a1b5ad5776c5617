use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ramsey-nice");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).arg("--deterministic").args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn verify(path: &Path) -> Output {
    Command::new(BIN).arg("verify").arg(path).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn round_trip(dir: &Path, name: &str, args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.code() == Some(0), "{name}: {}", stderr(&o));
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &o.stdout).unwrap();
    let v = verify(&path);
    assert_eq!(v.status.code(), Some(0), "{name}: {}", stderr(&v));
    let report: Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(report["verified"], true);
    json(&o)
}

#[test]
fn every_subcommand_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let hyper = dir.path().join("h.txt");
    std::fs::write(&hyper, "3\n2 2 2\n0 0 0\n1 1 1\n0 1 1\n").unwrap();
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let g = graph.to_str().unwrap();
    let h = hyper.to_str().unwrap();

    assert_eq!(round_trip(dir.path(), "chi", &["chi", "--graph", g])["value"], 3);
    assert_eq!(round_trip(dir.path(), "chi-petersen", &["chi", "--builtin", "petersen"])["value"], 3);
    assert_eq!(round_trip(dir.path(), "clique", &["clique", "--builtin", "complete:5"])["value"], 5);
    assert_eq!(round_trip(dir.path(), "core", &["core", "--builtin", "petersen", "--d", "3"])["value"], 10);
    let c = round_trip(dir.path(), "ramsey", &["ramsey", "--family", "F4", "--colors", "3", "--cap", "8"]);
    assert_eq!(c["value"], 4);
    assert_eq!(c["outcome"], "VALUE");
    let c = round_trip(dir.path(), "ramsey-n", &["ramsey", "--family", "P4", "--colors", "3", "--n", "6"]);
    assert_eq!(c["outcome"], "NOT_EXISTS");
    assert!(c["symmetry_scheme"].is_string());
    let c = round_trip(dir.path(), "cf", &["closed-form", "--family", "F3", "--colors", "4"]);
    assert_eq!(c["value"]["value"], 9);
    let c = round_trip(dir.path(), "cover", &["cover", "--n", "6", "--r", "3"]);
    assert_eq!(c["outcome"], "NOT_EXISTS");
    let c = round_trip(dir.path(), "cover5", &["cover", "--n", "5", "--r", "3"]);
    assert_eq!(c["outcome"], "EXISTS");
    let c = round_trip(dir.path(), "kirkman", &["cover", "--n", "9", "--r", "4", "--proper", "--decomposition"]);
    assert_eq!(c["outcome"], "EXISTS");
    assert_eq!(round_trip(dir.path(), "mc", &["max-cover", "--n", "6", "--r", "3"])["value"], 13);
    round_trip(dir.path(), "walecki", &["walecki", "--k", "5"]);
    round_trip(dir.path(), "galaxy", &["galaxy", "--k", "4"]);
    round_trip(dir.path(), "k11", &["k11"]);
    let c = round_trip(dir.path(), "chir", &["chi-r", "--r", "3"]);
    assert_eq!(c["value"]["status"], "INTERVAL");
    round_trip(dir.path(), "bij", &["bijection", "--instances", "25"]);
    assert_eq!(round_trip(dir.path(), "match", &["match", "--hypergraph", h])["value"], 2);
    assert_eq!(round_trip(dir.path(), "ci", &["chromatic-index", "--hypergraph", h])["value"], 2);
    let c = round_trip(dir.path(), "ach", &["ach", "--d", "4"]);
    assert_eq!(c["value"]["max_matching"], 4);
    assert_eq!(c["value"]["conjectured_bound"], 5);
    round_trip(dir.path(), "plane", &["plane", "--p", "3"]);
    round_trip(dir.path(), "tp", &["truncated-plane", "--p", "3"]);
    round_trip(dir.path(), "c51", &["claim51", "--p", "2", "--m", "2", "--duplicate-part", "3", "--copies", "2"]);
}

#[test]
fn certificates_are_byte_stable() {
    for args in [
        &["k11"][..],
        &["ramsey", "--family", "P4", "--colors", "2", "--cap", "8"],
        &["bijection", "--instances", "10", "--seed", "3"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn tampering_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = json(&run(&["k11"]));
    let factors = cert["witness"]["factors"].as_array_mut().unwrap();
    let text = factors[0].as_str().unwrap().to_string();
    // drop the last edge line and fix the edge count
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let header: Vec<usize> = lines[0].split_whitespace().map(|t| t.parse().unwrap()).collect();
    let head = format!("{} {}", header[0], header[1] - 1);
    lines[0] = &head;
    factors[0] = Value::String(lines.join("\n") + "\n");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let v = verify(&path);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("VERIFY_FAILED"), "{}", stderr(&v));

    let full = run(&["k11"]).stdout;
    let cut = dir.path().join("cut.json");
    std::fs::write(&cut, &full[..full.len() / 2]).unwrap();
    let v = verify(&cut);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("PARSE_ERROR"), "{}", stderr(&v));
}

#[test]
fn exit_codes() {
    let o = run(&["--budget", "5", "ramsey", "--family", "P4", "--colors", "3", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["outcome"], "UNKNOWN");
    let o = run(&["closed-form", "--family", "G4[0-1 1-2 2-3 3-0]", "--colors", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["cover", "--n", "4", "--r", "2", "--proper"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[BAD_N]"), "{}", stderr(&o));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["plane", "--p", "4"]).status.code(), Some(1));
}
