use std::path::PathBuf;
use std::process::Command;

use ising_ces::cli::{run, Outcome, Report};
use ising_ces::Graph;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("ising-ces").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn check_ces_on_the_necklace() {
    let (code, report) = json(&["check-ces", &data("necklace.circ"), "--lambda", "0.5"]);
    assert_eq!(code, 0);
    let Report::CheckCes(r) = report else {
        panic!()
    };
    assert_eq!(r.verdict, "CES");
    let (_, sim) = json(&["simulate", &data("necklace.circ")]);
    let Report::Simulate(s) = sim else { panic!() };
    assert!((r.amplitude.unwrap() - s.amplitude).abs() < 1e-12);
}

#[test]
fn check_ces_rejects_k4() {
    let out = cli(&["check-ces", &data("k4.circ")]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("verdict REJECTED"));
    assert!(out.stdout.contains("forbidden minor K4"));
}

#[test]
fn minors_of_k4() {
    let (code, report) = json(&["minors", &data("k4.graph")]);
    assert_eq!(code, 0);
    let Report::Minors(r) = report else { panic!() };
    assert!(!r.classification.theta_obstruction_free);
    assert!(r.classification.planar && !r.classification.outerplanar);
    assert_eq!(
        r.k4_witness.unwrap().branch_sets,
        vec![vec![0], vec![1], vec![2], vec![3]]
    );
}

#[test]
fn partition_of_one_edge() {
    let (code, report) = json(&["partition", &data("edge.graph"), "--beta", "1.0"]);
    assert_eq!(code, 0);
    let Report::Partition(r) = report else {
        panic!()
    };
    assert!((r.partition_function.unwrap() - 4.0 * 1f64.cosh()).abs() < 1e-12);
    let human = cli(&["partition", &data("edge.graph"), "--beta", "1.0"]);
    assert!(human.stdout.contains("partition function 6.1723"));
    assert!(human.stdout.contains("evaluator planar"));
    let big = cli(&["partition", &data("edge.graph"), "--lambda", "2"]);
    assert_eq!(big.code, 0);
    assert!(big.stdout.contains("undefined"));
}

#[test]
fn graph_round_trips() {
    let (code, report) = json(&["graph2circuit", &data("necklace.graph")]);
    assert_eq!(code, 0);
    let Report::GraphToCircuit(r) = report else {
        panic!()
    };
    assert!(r.in_theta);
    let dir = tempfile::tempdir().unwrap();
    let circ = dir.path().join("made.circ");
    std::fs::write(&circ, r.circuit.unwrap()).unwrap();
    let circ = circ.display().to_string();
    let back = cli(&["circuit2graph", &circ]);
    assert_eq!(back.code, 0);
    let (g, _) = Graph::parse(&back.stdout).unwrap();
    let (orig, _) =
        Graph::parse(&std::fs::read_to_string(data("necklace.graph")).unwrap()).unwrap();
    assert_eq!(g, orig);
    let solved = cli(&["solve-w", &circ]);
    assert_eq!(solved.code, 0);
    assert!(solved.stdout.contains("certificate: verified"));
    assert_eq!(cli(&["check-ces", &circ]).code, 0);
    let absent = cli(&["graph2circuit", &data("k4.graph")]);
    assert_eq!(absent.code, 3);
    assert!(absent.stdout.starts_with("not in Theta"));
}

#[test]
fn circuit2graph_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.circ");
    std::fs::write(&path, "circuit 3\nlambda 0.5\ngate XXY\ngate YYI\n").unwrap();
    let p = path.display().to_string();
    let out = cli(&["circuit2graph", &p]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("HYPERGRAPH gate 0"));
    assert!(out.stdout.contains("EVEN_Y gate 1"));
}

#[test]
fn qwgt_of_a_triangle() {
    let (code, report) = json(&[
        "qwgt",
        &data("triangle_a.mat"),
        &data("triangle_b.mat"),
        "--x",
        "0.5",
        "--y",
        "1",
    ]);
    assert_eq!(code, 0);
    let Report::Qwgt(r) = report else { panic!() };
    assert!((r.value - (1.0 - 0.125)).abs() < 1e-15);
}

#[test]
fn input_errors_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "graph 2\nedge 0 1\nedge 0 5\n").unwrap();
    let out = cli(&["minors", &path.display().to_string()]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert_eq!(cli(&["minors", "/nonexistent/file.graph"]).code, 4);
    assert_eq!(cli(&["partition", &data("edge.graph")]).code, 4);
    assert_eq!(
        cli(&[
            "partition",
            &data("edge.graph"),
            "--beta",
            "1",
            "--lambda",
            "0.5"
        ])
        .code,
        4
    );
    let capped = cli(&["--max-qubits", "4", "simulate", &data("necklace.circ")]);
    assert_eq!(capped.code, 5);
    assert!(capped.stderr.contains("circuit:"), "{}", capped.stderr);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn reports_round_trip_through_json() {
    let cases: Vec<Vec<String>> = vec![
        vec!["check-ces".into(), data("necklace.circ")],
        vec!["check-ces".into(), data("k4.circ")],
        vec!["solve-w".into(), data("necklace.circ")],
        vec!["circuit2graph".into(), data("necklace.circ")],
        vec!["graph2circuit".into(), data("necklace.graph")],
        vec!["minors".into(), data("k4.graph")],
        vec![
            "partition".into(),
            data("k4.graph"),
            "--lambda".into(),
            "0.3".into(),
        ],
        vec!["simulate".into(), data("k4.circ")],
        vec!["verify".into(), "--count".into(), "6".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, report) = json(&args);
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        // Human output renders the same data.
        let human = cli(&args);
        assert_eq!(human.stdout, report.human());
    }
}

#[test]
fn verify_is_reproducible() {
    let a = cli(&["verify", "--seed", "7"]);
    let b = cli(&["verify", "--seed", "7"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&["verify", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ising-ces");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["check-ces", &data("necklace.circ"), "--lambda", "0.5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("amplitude 0.544"));
    assert_eq!(
        status(&["check-ces", &data("k4.circ")]).status.code(),
        Some(2)
    );
    assert_eq!(
        status(&["graph2circuit", &data("k4.graph")]).status.code(),
        Some(3)
    );
    assert_eq!(status(&["simulate", "missing.circ"]).status.code(), Some(4));
}
