// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The `ising-ces` command line. Every subcommand builds a [`Report`];
//! human output is a rendering of that report and `--format json` is its
//! serialization.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{expansion_amplitude, h_matrix, simulate_amplitude, Angle, Circuit};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::graph::{
    classify, has_minor, is_planar, Classification, Graph, MinorMode, MinorWitness,
};
use crate::ising::{
    brute_force_partition, partition_from_sum, planar_even_subgraph_sum, qwgt,
    signed_even_subgraph_sum, IsingInstance,
};
use crate::mapping::{
    ces_decide, satisfies_bond_condition, solve_w_fixed, solve_w_joint, CesVerdict, Evaluator,
    ForbiddenMinor,
};
use crate::random::{
    random_bonds, random_connected_graph, random_graph_circuit, random_lambda, random_planar_graph,
    random_real_circuit,
};
use crate::Caps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "ising-ces",
    version,
    about = "Ising-model simulation of Pauli-rotation circuits"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Largest circuit for the statevector simulator.
    #[arg(long, default_value_t = 20, global = true, value_parser = clap::value_parser!(u64).range(1..=30))]
    pub max_qubits: u64,
    /// Largest cycle-space dimension enumerated exhaustively.
    #[arg(long, default_value_t = 24, global = true, value_parser = clap::value_parser!(u64).range(1..=40))]
    pub max_nullity: u64,
    /// Largest vertex count for the exhaustive spin sum.
    #[arg(long, default_value_t = 24, global = true, value_parser = clap::value_parser!(u64).range(1..=40))]
    pub max_spins: u64,
    /// Node budget of the minor search.
    #[arg(long, default_value_t = 1_000_000, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub minor_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        Caps {
            max_qubits: self.max_qubits as usize,
            max_nullity: self.max_nullity as usize,
            max_spins: self.max_spins as usize,
            minor_budget: self.minor_budget as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// Replaces the angle given in the circuit file.
#[derive(Debug, Clone, Args)]
pub struct AngleArgs {
    #[arg(long, conflicts_with = "theta")]
    pub lambda: Option<f64>,
    /// Radians.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
}

impl AngleArgs {
    fn apply(&self, c: Circuit) -> Result<Circuit> {
        let angle = match (self.lambda, self.theta) {
            (Some(l), _) => {
                if !(l > 0.0 && l.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "lambda must be positive, got {l}"
                    )));
                }
                Angle::Lambda(l)
            }
            (None, Some(t)) => {
                if !t.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "theta must be finite, got {t}"
                    )));
                }
                Angle::Theta(t)
            }
            (None, None) => return Ok(c),
        };
        Circuit::new(c.qubits(), c.gates().to_vec(), angle)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graph whose incidence matrix is CH.
    #[command(name = "circuit2graph")]
    CircuitToGraph { circuit: PathBuf },
    /// Find a circuit over the graph whose amplitude is its Ising sum.
    #[command(name = "graph2circuit")]
    GraphToCircuit {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Solve for the bond distribution of a given circuit.
    SolveW { circuit: PathBuf },
    /// Decide whether the circuit is simulable through a planar Ising model.
    CheckCes {
        circuit: PathBuf,
        #[command(flatten)]
        angle: AngleArgs,
    },
    /// Partition function or even-subgraph sum of an Ising graph.
    Partition {
        graph: PathBuf,
        #[arg(long, required_unless_present = "lambda", conflicts_with = "lambda")]
        beta: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        coupling: f64,
    },
    /// Statevector amplitude <0|U|0>.
    Simulate {
        circuit: PathBuf,
        #[command(flatten)]
        angle: AngleArgs,
    },
    /// Quadratically signed weight enumerator of a pair of 0/1 matrices.
    Qwgt {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Planarity and forbidden-minor report.
    Minors { graph: PathBuf },
    /// Randomized cross-checks between independent evaluators.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Bond bits as a `0/1` string in edge order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
}

impl GraphReport {
    fn new(g: &Graph, w: Option<&BitVector>) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            w: w.map(BitVector::to_bit_string),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("graph {}\n", self.vertices);
        let w: Vec<char> = self.w.as_deref().unwrap_or("").chars().collect();
        for (e, (u, v)) in self.edges.iter().enumerate() {
            let flag = if w.get(e) == Some(&'1') { 'A' } else { 'F' };
            let _ = writeln!(out, "edge {u} {v} {flag}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ColumnProblem {
    EvenY,
    Hypergraph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnDiagnostic {
    pub kind: ColumnProblem,
    pub gate: usize,
    /// Y count for `EVEN_Y`, number of X/Y qubits for `HYPERGRAPH`.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitToGraphReport {
    pub graph: Option<GraphReport>,
    pub diagnostics: Vec<ColumnDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphToCircuitReport {
    pub in_theta: bool,
    pub circuit: Option<String>,
    pub w: Option<String>,
    pub solution_space_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveWReport {
    pub graph: Option<GraphReport>,
    pub w: Option<String>,
    pub solution_space_dim: Option<usize>,
    /// Exhaustive kernel check of the solution; absent when skipped.
    pub certified: Option<bool>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckCesReport {
    pub verdict: String,
    pub graph: Option<GraphReport>,
    pub lambda: Option<f64>,
    pub evaluator: Option<Evaluator>,
    pub even_subgraph_sum: Option<f64>,
    pub amplitude: Option<f64>,
    pub partition_value: Option<f64>,
    pub solution_space_dim: Option<usize>,
    pub minor: Option<ForbiddenMinor>,
    pub witness: Option<MinorWitness>,
    pub euler_quick_pass: Option<bool>,
    pub reason: Option<String>,
    pub general_w: Option<String>,
}

impl CheckCesReport {
    pub fn from_verdict(v: &CesVerdict) -> Self {
        let mut r = CheckCesReport {
            verdict: v.label().to_string(),
            graph: None,
            lambda: None,
            evaluator: None,
            even_subgraph_sum: None,
            amplitude: None,
            partition_value: None,
            solution_space_dim: None,
            minor: None,
            witness: None,
            euler_quick_pass: None,
            reason: None,
            general_w: None,
        };
        match v {
            CesVerdict::Ces(c) => {
                r.graph = Some(GraphReport::new(&c.graph, Some(&c.solution.w)));
                r.lambda = Some(c.lambda);
                r.evaluator = Some(c.evaluator);
                r.even_subgraph_sum = Some(c.even_subgraph_sum);
                r.amplitude = Some(c.amplitude);
                r.partition_value = c.partition_value;
                r.solution_space_dim = Some(c.solution.solution_space_dim);
            }
            CesVerdict::Rejected {
                graph,
                minor,
                witness,
                euler_quick_pass,
            } => {
                r.graph = Some(GraphReport::new(graph, None));
                r.minor = Some(*minor);
                r.witness = Some(witness.clone());
                r.euler_quick_pass = Some(*euler_quick_pass);
            }
            CesVerdict::Unknown { reason, general_w } => {
                r.reason = Some(reason.clone());
                r.general_w = general_w.as_ref().map(BitVector::to_bit_string);
            }
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub lambda: f64,
    pub beta: Option<f64>,
    pub coupling: f64,
    pub evaluator: Evaluator,
    pub even_subgraph_sum: f64,
    /// Only defined for `lambda < 1`.
    pub partition_function: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub qubits: usize,
    pub gates: usize,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QwgtReport {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorsReport {
    #[serde(flatten)]
    pub classification: Classification,
    pub k4_witness: Option<MinorWitness>,
    pub k33_minus_edge_witness: Option<MinorWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCase {
    pub index: usize,
    pub kind: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub count: usize,
    pub cases: Vec<VerifyCase>,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    #[serde(rename = "circuit2graph")]
    CircuitToGraph(CircuitToGraphReport),
    #[serde(rename = "graph2circuit")]
    GraphToCircuit(GraphToCircuitReport),
    SolveW(SolveWReport),
    CheckCes(CheckCesReport),
    Partition(PartitionReport),
    Simulate(SimulateReport),
    Qwgt(QwgtReport),
    Minors(MinorsReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::CircuitToGraph(r) if r.graph.is_none() => EXIT_UNKNOWN,
            Report::GraphToCircuit(r) if !r.in_theta => EXIT_UNKNOWN,
            Report::SolveW(r) if r.w.is_none() => EXIT_UNKNOWN,
            Report::CheckCes(r) => match r.verdict.as_str() {
                "CES" => EXIT_OK,
                "REJECTED" => EXIT_REJECTED,
                _ => EXIT_UNKNOWN,
            },
            Report::Verify(r) if r.mismatches > 0 => EXIT_MISMATCH,
            _ => EXIT_OK,
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        match self {
            Report::CircuitToGraph(r) => match &r.graph {
                Some(g) => out.push_str(&g.text()),
                None => {
                    for d in &r.diagnostics {
                        let _ = match d.kind {
                            ColumnProblem::EvenY => writeln!(
                                out,
                                "EVEN_Y gate {}: {} Y factors, needs an odd count",
                                d.gate, d.count
                            ),
                            ColumnProblem::Hypergraph => writeln!(
                                out,
                                "HYPERGRAPH gate {}: X/Y on {} qubits, an edge needs exactly 2",
                                d.gate, d.count
                            ),
                        };
                    }
                }
            },
            Report::GraphToCircuit(r) => match (&r.circuit, &r.w) {
                (Some(c), Some(w)) => {
                    out.push_str(c);
                    let _ = writeln!(out, "# w {w}");
                    if let Some(d) = r.solution_space_dim {
                        let _ = writeln!(out, "# solution space dimension {d}");
                    }
                }
                _ => out.push_str(
                    "not in Theta: no bond distribution and circuit satisfy the cycle-parity conditions\n",
                ),
            },
            Report::SolveW(r) => {
                if let Some(g) = &r.graph {
                    out.push_str(&g.text());
                }
                match &r.w {
                    Some(w) => {
                        let _ = writeln!(out, "w {w}");
                        if let Some(d) = r.solution_space_dim {
                            let _ = writeln!(out, "solution space dimension {d}");
                        }
                        let _ = match r.certified {
                            Some(true) => writeln!(out, "certificate: verified on the cycle space"),
                            Some(false) => writeln!(out, "certificate: FAILED"),
                            None => writeln!(out, "certificate: skipped (cycle space too large)"),
                        };
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "no bond distribution: {}",
                            r.reason.as_deref().unwrap_or("unsolvable")
                        );
                    }
                }
            }
            Report::CheckCes(r) => {
                let _ = writeln!(out, "verdict {}", r.verdict);
                if let Some(a) = r.amplitude {
                    let _ = writeln!(out, "amplitude {a}");
                }
                if let Some(l) = r.lambda {
                    let _ = writeln!(out, "lambda {l}");
                }
                if let Some(s) = r.even_subgraph_sum {
                    let _ = writeln!(out, "even subgraph sum {s}");
                }
                if let Some(z) = r.partition_value {
                    let _ = writeln!(out, "partition function {z}");
                }
                if let Some(e) = r.evaluator {
                    let _ = writeln!(out, "evaluator {}", evaluator_name(e));
                }
                if let Some(g) = &r.graph {
                    if let Some(w) = &g.w {
                        let _ = writeln!(out, "w {w}");
                    }
                }
                if let Some(m) = r.minor {
                    let _ = writeln!(out, "forbidden minor {}", minor_name(m));
                }
                if let Some(wit) = &r.witness {
                    let _ = writeln!(out, "branch sets {:?}", wit.branch_sets);
                }
                if let Some(e) = r.euler_quick_pass {
                    let _ = writeln!(out, "euler quick test {}", pass(e));
                }
                if let Some(reason) = &r.reason {
                    let _ = writeln!(out, "reason {reason}");
                }
                if let Some(w) = &r.general_w {
                    let _ = writeln!(out, "per-weight condition satisfied by w {w}");
                }
            }
            Report::Partition(r) => {
                let _ = writeln!(out, "lambda {}", r.lambda);
                if let Some(b) = r.beta {
                    let _ = writeln!(out, "beta {b}");
                }
                let _ = writeln!(out, "evaluator {}", evaluator_name(r.evaluator));
                let _ = writeln!(out, "even subgraph sum {}", r.even_subgraph_sum);
                match r.partition_function {
                    Some(z) => {
                        let _ = writeln!(out, "partition function {z}");
                    }
                    None => out.push_str("partition function undefined for lambda >= 1\n"),
                }
            }
            Report::Simulate(r) => {
                let _ = writeln!(out, "amplitude {}", r.amplitude);
            }
            Report::Qwgt(r) => {
                let _ = writeln!(out, "qwgt {}", r.value);
            }
            Report::Minors(r) => {
                let c = &r.classification;
                let _ = writeln!(out, "planar {}", c.planar);
                let _ = writeln!(out, "outerplanar {}", c.outerplanar);
                let _ = writeln!(out, "euler quick test {}", pass(c.euler_quick_pass));
                let _ = writeln!(out, "k4 minor {}", c.k4_minor);
                let _ = writeln!(out, "k33 minus edge minor {}", c.k33_minus_edge_minor);
                let _ = writeln!(out, "theta obstruction free {}", c.theta_obstruction_free);
                if let Some(w) = &r.k4_witness {
                    let _ = writeln!(out, "k4 branch sets {:?}", w.branch_sets);
                }
                if let Some(w) = &r.k33_minus_edge_witness {
                    let _ = writeln!(out, "k33 minus edge branch sets {:?}", w.branch_sets);
                }
            }
            Report::Verify(r) => {
                for c in &r.cases {
                    let _ = writeln!(
                        out,
                        "#{:03} {:<10} {} {}",
                        c.index,
                        c.kind,
                        if c.ok { "ok" } else { "MISMATCH" },
                        c.detail
                    );
                }
                let _ = writeln!(
                    out,
                    "seed {} cases {} mismatches {}",
                    r.seed, r.count, r.mismatches
                );
            }
        }
        out
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn evaluator_name(e: Evaluator) -> &'static str {
    match e {
        Evaluator::Planar => "planar",
        Evaluator::Kernel => "kernel",
        Evaluator::Spins => "spins",
    }
}

fn minor_name(m: ForbiddenMinor) -> &'static str {
    match m {
        ForbiddenMinor::K4 => "K4",
        ForbiddenMinor::K33MinusEdge => "K3,3 minus an edge",
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Human => report.human(),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                code: report.exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Cap { .. } | Error::BudgetExceeded(_) => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn load_circuit(path: &Path) -> Result<Circuit> {
    with_path(path, Circuit::parse(&read(path)?))
}

fn load_graph(path: &Path) -> Result<(Graph, BitVector)> {
    with_path(path, Graph::parse(&read(path)?))
}

/// Rows of `0`/`1` digits, optionally space separated; `#` starts a comment.
pub fn parse_bit_matrix(text: &str) -> Result<BitMatrix> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => row.push(0),
                '1' => row.push(1),
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("unexpected character {other:?}; rows hold 0 and 1"),
                    })
                }
            }
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "matrix has no rows".into(),
        });
    }
    Ok(BitMatrix::from_rows(&rows))
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    let caps = cli.caps();
    match &cli.command {
        Command::CircuitToGraph { circuit } => {
            let c = load_circuit(circuit)?;
            Ok(Report::CircuitToGraph(circuit_to_graph_report(&c)))
        }
        Command::GraphToCircuit { graph, lambda } => {
            if !(*lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "lambda must be positive, got {lambda}"
                )));
            }
            let (g, _) = load_graph(graph)?;
            let report = match solve_w_joint(&g) {
                Some(sol) => {
                    let c = crate::circuit::circuit_from_h(&sol.h, Angle::Lambda(*lambda))?;
                    GraphToCircuitReport {
                        in_theta: true,
                        circuit: Some(c.to_text()),
                        w: Some(sol.w.to_bit_string()),
                        solution_space_dim: Some(sol.solution_space_dim),
                    }
                }
                None => GraphToCircuitReport {
                    in_theta: false,
                    circuit: None,
                    w: None,
                    solution_space_dim: None,
                },
            };
            Ok(Report::GraphToCircuit(report))
        }
        Command::SolveW { circuit } => {
            let c = load_circuit(circuit)?;
            let h = h_matrix(&c);
            let g = match crate::mapping::circuit_to_graph(&h) {
                Ok(g) => g,
                Err(e) => {
                    return Ok(Report::SolveW(SolveWReport {
                        graph: None,
                        w: None,
                        solution_space_dim: None,
                        certified: None,
                        reason: Some(e.to_string()),
                    }))
                }
            };
            let report = match solve_w_fixed(&h)? {
                Some(sol) => {
                    let certified = if g.cycle_space().nullity <= caps.max_nullity {
                        Some(satisfies_bond_condition(&h, &sol.w, &caps)?)
                    } else {
                        None
                    };
                    SolveWReport {
                        graph: Some(GraphReport::new(&g, Some(&sol.w))),
                        w: Some(sol.w.to_bit_string()),
                        solution_space_dim: Some(sol.solution_space_dim),
                        certified,
                        reason: None,
                    }
                }
                None => SolveWReport {
                    graph: Some(GraphReport::new(&g, None)),
                    w: None,
                    solution_space_dim: None,
                    certified: None,
                    reason: Some(
                        "the cycle-parity system has no solution for this gate order".into(),
                    ),
                },
            };
            Ok(Report::SolveW(report))
        }
        Command::CheckCes { circuit, angle } => {
            let c = angle.apply(load_circuit(circuit)?)?;
            Ok(Report::CheckCes(CheckCesReport::from_verdict(&ces_decide(
                &c, &caps,
            ))))
        }
        Command::Partition {
            graph,
            beta,
            lambda,
            coupling,
        } => {
            let (g, w) = load_graph(graph)?;
            if !(*coupling > 0.0 && coupling.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "coupling must be positive, got {coupling}"
                )));
            }
            let (lambda, beta) = match (beta, lambda) {
                (Some(b), _) => {
                    if !(*b > 0.0 && b.is_finite()) {
                        return Err(Error::InvalidParameter(format!(
                            "beta must be positive, got {b}"
                        )));
                    }
                    ((b * coupling).tanh(), Some(*b))
                }
                (None, Some(l)) => {
                    if !(*l > 0.0 && l.is_finite()) {
                        return Err(Error::InvalidParameter(format!(
                            "lambda must be positive, got {l}"
                        )));
                    }
                    (*l, (*l < 1.0).then(|| l.atanh() / coupling))
                }
                (None, None) => unreachable!("clap requires one of --beta and --lambda"),
            };
            Ok(Report::Partition(partition_report(
                &g, &w, lambda, beta, *coupling, &caps,
            )?))
        }
        Command::Simulate { circuit, angle } => {
            let c = angle.apply(load_circuit(circuit)?)?;
            Ok(Report::Simulate(SimulateReport {
                qubits: c.qubits(),
                gates: c.gates().len(),
                amplitude: simulate_amplitude(&c, &caps)?,
            }))
        }
        Command::Qwgt { a, b, x, y } => {
            let ma = with_path(a, parse_bit_matrix(&read(a)?))?;
            let mb = with_path(b, parse_bit_matrix(&read(b)?))?;
            Ok(Report::Qwgt(QwgtReport {
                x: *x,
                y: *y,
                value: qwgt(&ma, &mb, *x, *y, &caps)?,
            }))
        }
        Command::Minors { graph } => {
            let (g, _) = load_graph(graph)?;
            let classification = classify(&g, caps.minor_budget)?;
            let k4_witness = if classification.k4_minor {
                has_minor(&g, &Graph::complete(4), caps.minor_budget)?
            } else {
                None
            };
            let k33_minus_edge_witness = if classification.k33_minus_edge_minor {
                has_minor(&g, &Graph::k33_minus_edge(), caps.minor_budget)?
            } else {
                None
            };
            Ok(Report::Minors(MinorsReport {
                classification,
                k4_witness,
                k33_minus_edge_witness,
            }))
        }
        Command::Verify { seed, count } => Ok(Report::Verify(verify(*seed, *count, &caps))),
    }
}

fn circuit_to_graph_report(c: &Circuit) -> CircuitToGraphReport {
    let mut diagnostics = Vec::new();
    for (k, g) in c.gates().iter().enumerate() {
        let y = g.y_count();
        if y % 2 == 0 {
            diagnostics.push(ColumnDiagnostic {
                kind: ColumnProblem::EvenY,
                gate: k,
                count: y,
            });
        }
        let ends = g.flip_mask().count_ones() as usize;
        if ends != 2 {
            diagnostics.push(ColumnDiagnostic {
                kind: ColumnProblem::Hypergraph,
                gate: k,
                count: ends,
            });
        }
    }
    let graph = if diagnostics.is_empty() {
        crate::mapping::circuit_to_graph(&h_matrix(c))
            .ok()
            .map(|g| GraphReport::new(&g, None))
    } else {
        None
    };
    CircuitToGraphReport { graph, diagnostics }
}

/// Planar when an embedding exists, else cycle-space enumeration, else the
/// spin sum (which needs `lambda < 1`).
pub fn partition_report(
    g: &Graph,
    w: &BitVector,
    lambda: f64,
    beta: Option<f64>,
    coupling: f64,
    caps: &Caps,
) -> Result<PartitionReport> {
    let (s, evaluator) = if let Some(rot) = is_planar(g) {
        (
            planar_even_subgraph_sum(g, w, lambda, &rot)?,
            Evaluator::Planar,
        )
    } else {
        let nullity = g.cycle_space().nullity;
        if nullity <= caps.max_nullity {
            (
                signed_even_subgraph_sum(g, w, lambda, caps)?,
                Evaluator::Kernel,
            )
        } else if lambda < 1.0 && g.vertex_count() <= caps.max_spins {
            let inst = IsingInstance::new(g.clone(), w.clone(), coupling)?;
            let b = lambda.atanh() / coupling;
            let z = brute_force_partition(&inst, b, caps)?;
            let e = g.edge_count() as f64;
            let scale = (g.vertex_count() as f64).exp2() * (1.0 - lambda * lambda).powf(-e / 2.0);
            (z / scale, Evaluator::Spins)
        } else {
            return Err(Error::Cap {
                module: "ising",
                what: "cycle-space dimension of a nonplanar graph",
                value: nullity,
                cap: caps.max_nullity,
            });
        }
    };
    Ok(PartitionReport {
        lambda,
        beta,
        coupling,
        evaluator,
        even_subgraph_sum: s,
        partition_function: partition_from_sum(g, s, lambda).ok(),
    })
}

const VERIFY_TOL: f64 = 1e-9;

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// The randomized suite behind `verify`. Case `i` draws from its own
/// ChaCha stream, so results do not depend on `count`.
pub fn verify(seed: u64, count: usize, caps: &Caps) -> VerifyReport {
    let cases: Vec<VerifyCase> = (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (kind, result) = match i % 3 {
                0 => ("partition", verify_partition(&mut rng, caps)),
                1 => ("amplitude", verify_amplitude(&mut rng, i, caps)),
                _ => ("closure", verify_closure(&mut rng)),
            };
            let (ok, detail) = match result {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            VerifyCase {
                index: i,
                kind: kind.to_string(),
                ok,
                detail,
            }
        })
        .collect();
    let mismatches = cases.iter().filter(|c| !c.ok).count();
    VerifyReport {
        seed,
        count,
        cases,
        mismatches,
    }
}

fn verify_partition(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<(bool, String)> {
    let n = rng.random_range(2..=10);
    let extra = rng.random_range(0..=2 * n);
    let g = random_planar_graph(rng, n, extra);
    let w = random_bonds(rng, g.edge_count());
    let lambda = random_lambda(rng);
    let beta = lambda.atanh();
    let inst = IsingInstance::new(g.clone(), w.clone(), 1.0)?;
    let z_spins = brute_force_partition(&inst, beta, caps)?;
    let z_kernel = partition_from_sum(&g, signed_even_subgraph_sum(&g, &w, lambda, caps)?, lambda)?;
    let rot = is_planar(&g).expect("generator output is planar");
    let z_planar = partition_from_sum(&g, planar_even_subgraph_sum(&g, &w, lambda, &rot)?, lambda)?;
    let err = rel_diff(z_spins, z_kernel).max(rel_diff(z_spins, z_planar));
    Ok((
        err <= VERIFY_TOL,
        format!(
            "V={} E={} lambda={lambda:.1} Z={z_spins:.12e} rel_err={err:.2e}",
            n,
            g.edge_count()
        ),
    ))
}

fn verify_amplitude(rng: &mut ChaCha8Rng, i: usize, caps: &Caps) -> Result<(bool, String)> {
    // Alternate unstructured circuits with circuits built on graphs, which
    // are the ones that can reach the CES path.
    let c = if (i / 3) % 2 == 0 {
        random_real_circuit(rng, 6, 8)
    } else {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(n - 1..=(n * (n - 1) / 2).min(8));
        let g = random_connected_graph(rng, n, m);
        let lambda = random_lambda(rng);
        random_graph_circuit(rng, &g, 0.3, Angle::Lambda(lambda))
    };
    let sv = simulate_amplitude(&c, caps)?;
    let ex = expansion_amplitude(&h_matrix(&c), c.lambda(), caps)?;
    let mut err = (sv - ex).abs();
    let verdict = ces_decide(&c, caps);
    if let CesVerdict::Ces(cert) = &verdict {
        err = err.max((sv - cert.amplitude).abs());
    }
    Ok((
        err <= VERIFY_TOL,
        format!(
            "n={} N={} amp={sv:.12e} err={err:.2e} {}",
            c.qubits(),
            c.gates().len(),
            verdict.label()
        ),
    ))
}

/// Deletion closure is checked; contraction outcomes are reported but not
/// counted, since contracting can leave the solvable class.
fn verify_closure(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for _ in 0..64 {
        let n = rng.random_range(3..=7);
        let m = rng.random_range(n - 1..=(n * (n - 1) / 2).min(10));
        let g = random_connected_graph(rng, n, m);
        if solve_w_joint(&g).is_none() {
            continue;
        }
        let mut deletion_failures = Vec::new();
        let mut contraction_rejected = 0;
        for e in 0..g.edge_count() {
            if solve_w_joint(&g.minor_step(e, MinorMode::Delete, false)?).is_none() {
                deletion_failures.push(e);
            }
            if solve_w_joint(&g.minor_step(e, MinorMode::Contract, false)?).is_none() {
                contraction_rejected += 1;
            }
        }
        return Ok((
            deletion_failures.is_empty(),
            format!(
                "V={n} E={} deletions_rejected={:?} contractions_rejected={contraction_rejected}",
                g.edge_count(),
                deletion_failures
            ),
        ));
    }
    Ok((true, "no accepted graph drawn".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_matrix_format() {
        let m = parse_bit_matrix("# A\n1 0 1\n011\n").unwrap();
        assert_eq!(m, BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]));
        assert!(matches!(
            parse_bit_matrix("10\n1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_bit_matrix("12\n").is_err());
    }

    #[test]
    fn verify_cases_are_independent_of_count() {
        let caps = Caps::default();
        let short = verify(3, 4, &caps);
        let long = verify(3, 7, &caps);
        assert_eq!(short.cases[..], long.cases[..4]);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
