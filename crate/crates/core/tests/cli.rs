use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use wcoalg::gen;
use wcoalg::io::{automaton_to_value, parse_json, to_canonical_string, AnyAutomaton};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn wcoalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcoalg"))
        .args(args)
        .env_remove("SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn counting_file_round_trips_byte_for_byte() {
    let text = std::fs::read_to_string(data("counting.json")).unwrap();
    let aut = AnyAutomaton::from_value(&parse_json(&text).unwrap()).unwrap();
    assert_eq!(to_canonical_string(&aut.to_value()), text);
}

#[test]
fn rationals_are_normalized_on_output() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("counting.json")).unwrap().replacen("\"0/1\",\n    \"1/1\"\n  ],\n  \"semiring\"", "\"6/4\",\n    \"1/1\"\n  ],\n  \"semiring\"", 1);
    assert!(text.contains("6/4"));
    let f = write(dir.path(), "a.json", &text);
    let empty = write(dir.path(), "e.json", r#"{"semiring":"Q","alphabet":["a","b"],"states":0,"output":[],"transitions":{"a":[],"b":[]}}"#);
    let o = wcoalg(&["coproduct", &f, &empty]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("\"3/2\""));
    assert!(!out.contains("6/4"));
}

#[test]
fn counting_behavior_on_aba() {
    let o = wcoalg(&["behavior", p(&data("counting.json")), "--word", "aba"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["value"], "2/1");
}

#[test]
fn short_row_is_reported_with_its_index() {
    let o = wcoalg(&["behavior", p(&data("short_row.json"))]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("transitions.a row 1"), "{err}");
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\n  \"semiring\": \"Q\",\n  \"alphabet\": [\"a\"\n}\n");
    let o = wcoalg(&["behavior", &f]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn equiv_on_identical_files_passes() {
    let f = data("counting.json");
    let o = wcoalg(&["equiv", p(&f), p(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["verdict"], "equivalent");
}

#[test]
fn inequivalent_starts_exit_one() {
    let f = data("counting.json");
    let o = wcoalg(&["equiv", p(&f), p(&f), "--start2", "0/1,1/1"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "inequivalent");
    assert_eq!(v["counterexample"], "");
}

#[test]
fn witness_on_conjugate_pair_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pair = gen::conjugate_pair(&mut rng, 3, &gen::letters(2), true);
    let left = write(dir.path(), "l.json", &to_canonical_string(&automaton_to_value(&pair.left.clone().with_initial(Some(pair.v1.clone())).unwrap())));
    let right = write(dir.path(), "r.json", &to_canonical_string(&automaton_to_value(&pair.right.clone().with_initial(Some(pair.v2.clone())).unwrap())));
    let o = wcoalg(&["witness", &left, &right]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["arrows"].as_array().unwrap().len(), 4);
    let w = write(dir.path(), "w.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = wcoalg(&["verify-witness", &w]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["result"], "pass");
}

#[test]
fn tropical_requests_are_unsupported() {
    let t = data("tropical.json");
    for cmd in ["equiv", "witness"] {
        let o = wcoalg(&[cmd, p(&t), p(&t)]);
        assert_eq!(code(&o), 2);
        assert!(o.stdout.is_empty());
        let err = String::from_utf8(o.stderr).unwrap();
        let flag = if cmd == "equiv" { "supports_equivalence_decision" } else { "supports_witness_construction" };
        assert!(err.contains("unsupported") && err.contains(flag), "{err}");
    }
}

#[test]
fn ends_in_a_concretizes_to_two_states() {
    let o = wcoalg(&["concretize", p(&data("ends_in_a.json")), "--start", "1,0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["states"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    let f = data("counting.json");
    let runs = [
        vec!["series", p(&f), "--depth", "4"],
        vec!["bloom-check", p(&f), "--seed", "5"],
        vec!["lab", "search", "--max-word", "1"],
    ];
    for args in runs {
        let (a, b) = (wcoalg(&args), wcoalg(&args));
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&wcoalg(&[])), 2);
    assert_eq!(code(&wcoalg(&["equiv", p(&data("counting.json"))])), 2);
    assert_eq!(code(&wcoalg(&["behavior", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&wcoalg(&["behavior", p(&data("counting.json")), "--word", "c"])), 2);
}

#[test]
fn lab_fixture_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let o = wcoalg(&["lab", "fixture", "successor-u"]);
    assert_eq!(code(&o), 0);
    let a = write(dir.path(), "a.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = wcoalg(&["lab", "behavior", &a, "--term", "u(x)", "--depth", "4"]);
    assert_eq!(code(&o), 0);
    let o = wcoalg(&["lab", "bounded", &a, "--term", "x"]);
    assert_eq!(code(&o), 0);
    let o = wcoalg(&["lab", "search"]);
    assert_eq!(code(&o), 0);
}
