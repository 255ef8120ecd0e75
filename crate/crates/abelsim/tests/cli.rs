use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use abelsim::cli::{self, CircuitFile, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION};
use abelsim::exactalg::{q, Rational};
use abelsim::groups::GroupSpec;
use abelsim::{random, stabilizer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn temp_circuit(text: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!("abelsim-cli-{}-{n}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["abelsim"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_file(cmd: &str, text: &str, extra: &[&str]) -> (i32, String, String) {
    let path = temp_circuit(text);
    let p = path.to_str().unwrap().to_string();
    let mut args = vec![cmd, "--circuit", p.as_str()];
    args.extend_from_slice(extra);
    let res = run(&args);
    let _ = std::fs::remove_file(&path);
    res
}

fn samples(stdout: &str) -> Vec<Vec<Rational>> {
    stdout
        .lines()
        .skip(1)
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            v["sample"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().parse().unwrap()).collect()
        })
        .collect()
}

const HADAMARD_Z2: &str = r#"{"group":[{"ZN":2}],"input":["0"],"gates":[{"fourier":[0]}]}"#;

#[test]
fn simulate_hadamard_samples_both_values() {
    let (code, out, err) = run_file("simulate", HADAMARD_Z2, &["--count", "100", "--seed", "5"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let xs = samples(&out);
    assert_eq!(xs.len(), 100);
    assert!(xs.iter().all(|x| x[0] == 0 || x[0] == 1));
    assert!(xs.iter().any(|x| x[0] == 0));
    assert!(xs.iter().any(|x| x[0] == 1));
    let header: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(header["count"], 100);
    assert_eq!(header["seed"], 5);
}

#[test]
fn empty_circuit_samples_the_input() {
    let text = r#"{"group":["Z","T",{"ZN":5}],"input":["-3","2/7","4"],"gates":[]}"#;
    let (code, out, _) = run_file("simulate", text, &["--count", "20"]);
    assert_eq!(code, EXIT_OK);
    for x in samples(&out) {
        assert_eq!(x, vec![Rational::from(-3), q(2, 7), Rational::from(4)]);
    }
}

#[test]
fn bad_rational_is_a_parse_error() {
    let text = r#"{"group":["Z"],"input":["1/0"],"gates":[]}"#;
    let (code, _, err) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_PARSE, "{err}");
    assert!(err.starts_with("error:"));
}

#[test]
fn unknown_flag_and_missing_file_exit_one() {
    assert_eq!(run(&["simulate", "--bogus"]).0, EXIT_PARSE);
    assert_eq!(run(&["validate", "--circuit", "/nonexistent/abelsim.json"]).0, EXIT_PARSE);
    assert_eq!(run(&["simulate", "--circuit", "x.json", "--epsilon", "abc"]).0, EXIT_PARSE);
}

#[test]
fn validate_sum_gate() {
    let text = r#"{"group":[{"ZN":4},{"ZN":4}],"input":["3","2"],"gates":[{"automorphism":[["1","0"],["1","1"]]}]}"#;
    let (code, out, _) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "Z_4 × Z_4 (unchanged × 1 gates)");
}

#[test]
fn validate_prints_group_chain_when_fourier_changes_it() {
    let text = r#"{"group":["Z",{"ZN":4}],"input":["0","0"],"gates":[{"fourier":[0]}]}"#;
    let (code, out, _) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["G(0) = Z × Z_4", "G(1) = T × Z_4"]);
}

#[test]
fn forbidden_automorphism_block_is_a_validation_error() {
    // Entry at (Z row, T column): T -> Z must be zero.
    let text = r#"{"group":["Z","T"],"input":["0","0"],"gates":[{"automorphism":[["1","1"],["0","1"]]}]}"#;
    let (code, _, err) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_VALIDATION, "{err}");
    assert!(err.contains("forbidden block"), "{err}");
}

#[test]
fn singular_automorphism_is_a_validation_error() {
    let text = r#"{"group":["Z","Z"],"input":["0","0"],"gates":[{"automorphism":[["1","1"],["1","1"]]}]}"#;
    let (code, _, err) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_VALIDATION, "{err}");
}

#[test]
fn real_factor_is_rejected() {
    let text = r#"{"group":["R"],"input":["0"],"gates":[]}"#;
    let (code, _, _) = run_file("validate", text, &[]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn support_of_basis_state_has_no_generators() {
    let text = r#"{"group":["Z",{"ZN":3}],"input":["7","2"],"gates":[]}"#;
    let (code, out, _) = run_file("support", text, &[]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["x0"], serde_json::json!(["7", "2"]));
    assert_eq!(v["domain"], serde_json::json!([0, 0]));
}

#[test]
fn oracle_check_random_finite_circuit() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let g = GroupSpec::cyclic(&[4, 3]);
    let c = random::finite_circuit(&mut rng, &g, 8);
    let text = CircuitFile::from_circuit(&c).to_json();
    let (code, out, err) = run_file("oracle-check", &text, &["--count", "3000", "--seed", "2"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["result"], "match");
}

#[test]
fn oracle_check_catches_a_wrong_description() {
    let f = CircuitFile::parse(HADAMARD_Z2).unwrap();
    let c = f.to_circuit().unwrap();
    let mut out = Vec::new();
    // Skip the gate: the description stays at |0⟩.
    let code = cli::oracle_check_with(&c, 500, 1, |c| stabilizer::initial_state(&c.group0, &c.input), &mut out).unwrap();
    assert_eq!(code, EXIT_MISMATCH);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["result"], "support mismatch");
}

#[test]
fn oracle_check_refuses_infinite_groups() {
    let text = r#"{"group":["Z"],"input":["0"],"gates":[{"fourier":[0]}]}"#;
    let (code, _, err) = run_file("oracle-check", text, &[]);
    assert_eq!(code, EXIT_VALIDATION, "{err}");
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/circuits/mixed.json")).unwrap();
    let a = run_file("simulate", &text, &["--count", "50", "--seed", "3"]);
    let b = run_file("simulate", &text, &["--count", "50", "--seed", "3"]);
    let c = run_file("simulate", &text, &["--count", "50", "--seed", "4"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
    assert_ne!(a.1, c.1);
}

#[test]
fn flags_override_file_sampling() {
    let text = r#"{"group":["Z"],"input":["0"],"gates":[{"fourier":[0]}],"sampling":{"epsilon":"1/8","count":3,"seed":1}}"#;
    let (_, out, _) = run_file("simulate", text, &[]);
    assert_eq!(samples(&out).len(), 3);
    let (_, out, _) = run_file("simulate", text, &["--count", "6", "--epsilon", "1/32"]);
    assert_eq!(samples(&out).len(), 6);
    let header: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(header["net"]["epsilon"], "1/32");
}

#[test]
fn out_flag_writes_a_file() {
    let dest = std::env::temp_dir().join(format!("abelsim-cli-out-{}.jsonl", std::process::id()));
    let (code, out, _) = run_file("simulate", HADAMARD_Z2, &["--count", "4", "--out", dest.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&dest).unwrap();
    let _ = std::fs::remove_file(&dest);
    assert_eq!(written.lines().count(), 5);
}

#[test]
fn circuit_file_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let g = random::circuit_group(&mut rng, 3);
        let c = random::circuit(&mut rng, &g, 5);
        let f = CircuitFile::from_circuit(&c);
        let back = CircuitFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let c2 = back.to_circuit().unwrap();
        assert_eq!(stabilizer::run_circuit(&c2).unwrap(), stabilizer::run_circuit(&c).unwrap());
    }
}

#[test]
fn shipped_circuits_validate() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/circuits");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (code, _, err) = run(&["validate", "--circuit", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{}: {err}", path.display());
    }
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_abelsim");
    let good = temp_circuit(HADAMARD_Z2);
    let out = Command::new(exe).args(["simulate", "--circuit"]).arg(&good).args(["--count", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
    let bad = temp_circuit("{not json");
    let out = Command::new(exe).args(["validate", "--circuit"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(!out.stderr.is_empty());
    let _ = std::fs::remove_file(good);
    let _ = std::fs::remove_file(bad);
}
