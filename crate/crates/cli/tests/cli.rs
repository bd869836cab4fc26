use std::io::Write;
use std::process::{Command, Output, Stdio};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ptolemaic_core::fvsp::FvspInstance;
use ptolemaic_core::gen::{erdos_renyi, fixture, random_fvsp_instance};
use ptolemaic_core::graph::WeightedGraph;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ptolemaic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

fn fixture_text(name: &str) -> String {
    ok(&["gen", "--fixture", name], "")
}

/// Writes `text` to a file under the target temp dir and returns its path.
fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ptolemaic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_p4_deletes_nothing() {
    let out = json(&ok(&["solve", "-"], &fixture_text("p4")));
    assert_eq!(out["deleted"], serde_json::json!([]));
    assert_eq!(out["weight"], 0.0);
    assert_eq!(out["certificates"]["chordal_and_gem_free"], true);
}

#[test]
fn solve_c5_matches_oracle() {
    let c5 = fixture_text("c5");
    let out = json(&ok(&["solve", "-"], &c5));
    assert_eq!(out["weight"], 1.0);
    assert_eq!(out["deleted"].as_array().unwrap().len(), 1);
    let oracle = json(&ok(&["oracle", "pd", "-"], &c5));
    assert_eq!(oracle["weight"], 1.0);
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(code(&run(&["solve", "-"], "p 3 1\ne 0 7\n")), 2);
    assert_eq!(code(&run(&["solve", "-"], "hello\n")), 2);
    assert_eq!(code(&run(&["fvsp", "-"], "d 2 1\na 0\n")), 2);
    assert_eq!(code(&run(&["solve", "/nonexistent/graph.txt"], "")), 2);
}

#[test]
fn bad_params_are_rejected_with_the_constraint() {
    let out = run(&["--params", "0.03,0.5,0.6", "solve", "-"], &fixture_text("c5"));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2*alpha >= 1 + eps"));
    let out = run(&["--params", "0.05,0.55,0.6", "solve", "-"], &fixture_text("c5"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3*(1 - beta) >= 1 + 8*eps"));
}

#[test]
fn icd_dumps() {
    let diamond = ok(&["icd", "-"], &fixture_text("diamond"));
    assert_eq!(diamond.lines().filter(|l| l.starts_with("node ")).count(), 3);
    assert_eq!(diamond.lines().filter(|l| l.starts_with("arc ")).count(), 2);
    let c5 = ok(&["icd", "-"], &fixture_text("c5"));
    assert_eq!(c5.lines().filter(|l| l.starts_with("node ")).count(), 10);
    assert_eq!(c5.lines().filter(|l| l.starts_with("arc ")).count(), 10);
    assert!(ok(&["icd", "-", "--format", "dot"], &fixture_text("c5")).starts_with("digraph icd {"));
}

#[test]
fn icd_rejects_c4_with_witness() {
    let out = run(&["icd", "-"], &fixture_text("c4"));
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[icd]") && err.contains("induced C4 0-1-2-3"), "{err}");
    let gem = run(&["icd", "-"], &fixture_text("gem"));
    assert_eq!(code(&gem), 3);
    assert!(String::from_utf8_lossy(&gem.stderr).contains("gem path"));
    let oracle = ok(&["icd", "--oracle", "-"], &fixture_text("c4"));
    assert_eq!(oracle.lines().filter(|l| l.starts_with("node ")).count(), 8);
}

const ST: &str = "d 4 4\na 0 2\na 1 2\na 1 3\na 0 3\n";

#[test]
fn fvsp_examples() {
    let forest = json(&ok(&["fvsp", "-"], "d 3 2\na 0 1\na 0 2\n"));
    assert_eq!(forest["weight"], 0.0);
    let st = json(&ok(&["fvsp", "-"], ST));
    assert_eq!(st["weight"], 1.0);
    for key in ["deleted", "theta", "stages"] {
        assert!(st.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json(&ok(&["oracle", "fvsp", "-"], ST))["weight"], 1.0);
}

#[test]
fn invalid_dag_names_the_node() {
    let out = run(&["fvsp", "-"], "d 3 3\na 0 1\na 1 2\na 2 0\n");
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("node 0"));
    // two parents of node 2 share the ancestor 0: not an in-tree
    let out = run(&["fvsp", "-"], "d 4 4\na 0 1\na 0 3\na 1 2\na 3 2\n");
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("node 2"));
}

#[test]
fn check_reports_the_hole() {
    let c5 = temp_file("c5.txt", &fixture_text("c5"));
    let out = run(&["check", &c5, "-"], "");
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "not ptolemaic: hole 0-1-2-3-4\n");
    assert!(ok(&["check", &c5, "-"], "2").starts_with("ok weight 1"));
    let solved = ok(&["solve", &c5], "");
    assert!(ok(&["check", &c5, "-"], &solved).starts_with("ok"));
}

#[test]
fn check_witness_uses_input_ids() {
    // isolated vertex 0, hole on 1..=5
    let g = temp_file("shifted.txt", "p 6 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let out = run(&["check", &g, "-", "--format", "json"], "0");
    assert_eq!(code(&out), 1);
    let report = json(&String::from_utf8_lossy(&out.stdout));
    assert_eq!(report["ok"], false);
    assert_eq!(report["witness"], "hole 1-2-3-4-5");
}

#[test]
fn check_fvsp_solutions() {
    let st = temp_file("st.txt", ST);
    assert!(ok(&["check", &st, "-"], "2").starts_with("ok weight 1"));
    let out = run(&["check", &st, "-"], "0");
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("descendant"));
    let solved = ok(&["fvsp", &st], "");
    assert!(ok(&["check", &st, "-"], &solved).starts_with("ok"));
}

#[test]
fn gen_fixtures() {
    let gem: WeightedGraph = fixture_text("gem").parse().unwrap();
    assert_eq!((gem.n(), gem.edge_count()), (5, 7));
    assert!(gem.has_edge(4, 0) && gem.has_edge(4, 3) && !gem.has_edge(0, 3));
    for name in ["diamond", "house", "domino", "bull", "dart"] {
        let g: WeightedGraph = fixture_text(name).parse().unwrap();
        assert_eq!(g, fixture(name).unwrap());
    }
    assert_eq!(code(&run(&["gen", "--fixture", "nope"], "")), 2);
}

#[test]
fn gen_is_seeded() {
    let a = ok(&["gen", "--seed", "7", "-n", "9", "--weights", "0,10"], "");
    let b = ok(&["gen", "--seed", "7", "-n", "9", "--weights", "0,10"], "");
    let c = ok(&["gen", "--seed", "8", "-n", "9", "--weights", "0,10"], "");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let g: WeightedGraph = a.parse().unwrap();
    assert!(g.weights().iter().all(|w| (0.0..=10.0).contains(w)));
    let inst: FvspInstance = ok(&["gen", "--family", "fvsp", "--seed", "1", "-n", "7"], "").parse().unwrap();
    assert_eq!(inst.validate(), Ok(()));
}

#[test]
fn output_is_deterministic() {
    for seed in 0..5 {
        let g = ok(&["gen", "--seed", &seed.to_string(), "-n", "8", "-p", "0.5", "--weights", "0,10"], "");
        assert_eq!(ok(&["solve", "-"], &g), ok(&["solve", "-"], &g));
    }
    assert_eq!(ok(&["fvsp", "-"], ST), ok(&["fvsp", "-"], ST));
}

#[test]
fn budget_limits_oracles() {
    let out = run(&["oracle", "pd", "--budget", "4", "-"], &fixture_text("c5"));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn graph_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = ["diamond", "gem", "house", "domino", "bull", "dart", "c5", "p4", "k4"];
    let fixtures = names.iter().map(|n| fixture(n).unwrap());
    let random: Vec<WeightedGraph> = (0..100).map(|i| erdos_renyi(&mut rng, i % 12, 0.4, (0.0, 10.0))).collect();
    for g in fixtures.chain(random) {
        assert_eq!(g.to_text().parse::<WeightedGraph>().unwrap(), g);
    }
    for n in 0..20 {
        let inst = random_fvsp_instance(&mut rng, n, 0.5, (0.0, 3.0));
        assert_eq!(inst.to_text().parse::<FvspInstance>().unwrap(), inst);
    }
}
