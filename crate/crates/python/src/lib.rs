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

//! Python bindings. Reports come back as plain dicts with the same keys as
//! the CLI's JSON output.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use ising_ces::circuit::{expansion_amplitude, h_matrix, simulate_amplitude, Angle};
use ising_ces::cli::{partition_report, verify as run_verify, CheckCesReport};
use ising_ces::graph::{classify, has_minor, is_planar};
use ising_ces::ising::{
    brute_force_partition, pfaffian as pf, qwgt as qwgt_sum, signed_even_subgraph_sum,
    IsingInstance, SkewMatrix,
};
use ising_ces::mapping::{ces_decide, solve_w_fixed, solve_w_joint};
use ising_ces::{BitMatrix, BitVector, Caps, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Cap { .. } | Error::BudgetExceeded(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn report<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn bits(v: &[u8]) -> PyResult<BitVector> {
    if v.iter().any(|&b| b > 1) {
        return Err(PyValueError::new_err("bits must be 0 or 1"));
    }
    Ok(BitVector::from_bits(v))
}

fn bit_matrix(rows: Vec<Vec<u8>>) -> PyResult<BitMatrix> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    if rows.iter().flatten().any(|&b| b > 1) {
        return Err(PyValueError::new_err("entries must be 0 or 1"));
    }
    Ok(BitMatrix::from_rows(&rows))
}

fn angle(lambda: Option<f64>, theta: Option<f64>) -> PyResult<Angle> {
    match (lambda, theta) {
        (Some(l), None) if l > 0.0 && l.is_finite() => Ok(Angle::Lambda(l)),
        (Some(l), None) => Err(PyValueError::new_err(format!(
            "lambda must be positive, got {l}"
        ))),
        (None, Some(t)) if t.is_finite() => Ok(Angle::Theta(t)),
        (None, Some(t)) => Err(PyValueError::new_err(format!(
            "theta must be finite, got {t}"
        ))),
        _ => Err(PyValueError::new_err(
            "give exactly one of lambda and theta",
        )),
    }
}

/// A Pauli-rotation circuit with one shared angle.
#[pyclass(name = "Circuit", module = "ising_ces_py", frozen)]
struct PyCircuit(ising_ces::Circuit);

#[pymethods]
impl PyCircuit {
    #[new]
    #[pyo3(signature = (gates, *, lam = None, theta = None))]
    fn new(gates: Vec<String>, lam: Option<f64>, theta: Option<f64>) -> PyResult<Self> {
        let n = gates.first().map_or(0, String::len);
        let refs: Vec<&str> = gates.iter().map(String::as_str).collect();
        ising_ces::Circuit::from_strings(n, &refs, angle(lam, theta)?)
            .map(PyCircuit)
            .map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        ising_ces::Circuit::parse(text)
            .map(PyCircuit)
            .map_err(to_py)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.0.qubits()
    }

    #[getter]
    fn gates(&self) -> Vec<String> {
        self.0.gates().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda()
    }

    /// The 2n x N binary matrix, one column per gate.
    fn h_matrix(&self) -> Vec<Vec<u8>> {
        h_matrix(&self.0).matrix().to_rows()
    }

    /// `<0|U|0>` by statevector evolution.
    fn simulate(&self) -> PyResult<f64> {
        simulate_amplitude(&self.0, &Caps::default()).map_err(to_py)
    }

    /// The same amplitude as a signed sum over the kernel of CH.
    fn expansion_amplitude(&self) -> PyResult<f64> {
        expansion_amplitude(&h_matrix(&self.0), self.0.lambda(), &Caps::default()).map_err(to_py)
    }

    /// Bond distribution for this exact gate order, if one exists.
    fn solve_w(&self) -> PyResult<Option<Vec<u8>>> {
        Ok(solve_w_fixed(&h_matrix(&self.0))
            .map_err(to_py)?
            .map(|s| s.w.to_bits()))
    }

    /// The full decision pipeline; keys match `check-ces --format json`.
    fn check_ces<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let verdict = ces_decide(&self.0, &Caps::default());
        report(py, &CheckCesReport::from_verdict(&verdict))
    }

    fn __repr__(&self) -> String {
        format!("Circuit({:?}, lam={})", self.gates(), self.0.lambda())
    }
}

/// An undirected multigraph with ordered edges.
#[pyclass(name = "Graph", module = "ising_ces_py", frozen)]
struct PyGraph(ising_ces::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        ising_ces::Graph::new(vertices, edges)
            .map(PyGraph)
            .map_err(to_py)
    }

    /// Parses the graph text format; returns the graph and its bond bits.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<(Self, Vec<u8>)> {
        let (g, w) = ising_ces::Graph::parse(text).map_err(to_py)?;
        Ok((PyGraph(g), w.to_bits()))
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph(ising_ces::Graph::complete(n))
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> Self {
        PyGraph(ising_ces::Graph::complete_bipartite(a, b))
    }

    #[staticmethod]
    fn k33_minus_edge() -> Self {
        PyGraph(ising_ces::Graph::k33_minus_edge())
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    #[pyo3(signature = (w = None))]
    fn to_text(&self, w: Option<Vec<u8>>) -> PyResult<String> {
        let w = w.as_deref().map(bits).transpose()?;
        Ok(self.0.to_text(w.as_ref()))
    }

    /// A rotation system (edge order around each vertex), or None.
    fn planar_embedding(&self) -> Option<Vec<Vec<usize>>> {
        is_planar(&self.0).map(|r| r.into_inner())
    }

    #[pyo3(signature = (budget = 1_000_000))]
    fn classify<'py>(&self, py: Python<'py>, budget: usize) -> PyResult<Bound<'py, PyAny>> {
        report(py, &classify(&self.0, budget).map_err(to_py)?)
    }

    /// Branch sets of a minor model of `pattern`, or None.
    #[pyo3(signature = (pattern, budget = 1_000_000))]
    fn minor(&self, pattern: &PyGraph, budget: usize) -> PyResult<Option<Vec<Vec<usize>>>> {
        Ok(has_minor(&self.0, &pattern.0, budget)
            .map_err(to_py)?
            .map(|w| w.branch_sets))
    }

    /// `(w, gates)` for a circuit over this graph whose amplitude is its
    /// Ising sum, or None.
    fn solve_w_joint(&self) -> PyResult<Option<(Vec<u8>, Vec<String>)>> {
        let Some(sol) = solve_w_joint(&self.0) else {
            return Ok(None);
        };
        let c = ising_ces::circuit::circuit_from_h(&sol.h, Angle::Lambda(0.5)).map_err(to_py)?;
        Ok(Some((
            sol.w.to_bits(),
            c.gates().iter().map(ToString::to_string).collect(),
        )))
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.0.vertex_count(), self.0.edges())
    }
}

fn check_w(g: &PyGraph, w: Vec<u8>) -> PyResult<BitVector> {
    if w.len() != g.0.edge_count() {
        return Err(PyValueError::new_err(format!(
            "w has {} entries for {} edges",
            w.len(),
            g.0.edge_count()
        )));
    }
    bits(&w)
}

/// Partition function or even-subgraph sum by the best evaluator; keys
/// match `partition --format json`.
#[pyfunction]
#[pyo3(signature = (graph, w, *, beta = None, lam = None, coupling = 1.0))]
fn partition<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    w: Vec<u8>,
    beta: Option<f64>,
    lam: Option<f64>,
    coupling: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let w = check_w(graph, w)?;
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(PyValueError::new_err("coupling must be positive"));
    }
    let (lambda, beta) = match (beta, lam) {
        (Some(b), None) if b > 0.0 && b.is_finite() => ((b * coupling).tanh(), Some(b)),
        (None, Some(l)) if l > 0.0 && l.is_finite() => (l, (l < 1.0).then(|| l.atanh() / coupling)),
        _ => {
            return Err(PyValueError::new_err(
                "give exactly one positive beta or lam",
            ))
        }
    };
    let r =
        partition_report(&graph.0, &w, lambda, beta, coupling, &Caps::default()).map_err(to_py)?;
    report(py, &r)
}

/// Exhaustive spin sum.
#[pyfunction]
#[pyo3(signature = (graph, w, beta, coupling = 1.0))]
fn spin_partition(graph: &PyGraph, w: Vec<u8>, beta: f64, coupling: f64) -> PyResult<f64> {
    let inst = IsingInstance::new(graph.0.clone(), check_w(graph, w)?, coupling).map_err(to_py)?;
    brute_force_partition(&inst, beta, &Caps::default()).map_err(to_py)
}

/// `sum over the cycle space of (-1)^{a.w} lam^|a|`, by enumeration.
#[pyfunction]
fn even_subgraph_sum(graph: &PyGraph, w: Vec<u8>, lam: f64) -> PyResult<f64> {
    let w = check_w(graph, w)?;
    signed_even_subgraph_sum(&graph.0, &w, lam, &Caps::default()).map_err(to_py)
}

#[pyfunction]
fn qwgt(a: Vec<Vec<u8>>, b: Vec<Vec<u8>>, x: f64, y: f64) -> PyResult<f64> {
    qwgt_sum(&bit_matrix(a)?, &bit_matrix(b)?, x, y, &Caps::default()).map_err(to_py)
}

/// Pfaffian of a dense skew-symmetric matrix.
#[pyfunction]
fn pfaffian(matrix: Vec<Vec<f64>>) -> PyResult<f64> {
    pf(&SkewMatrix::from_dense(&matrix).map_err(to_py)?).map_err(to_py)
}

/// The randomized cross-check suite behind the `verify` command.
#[pyfunction]
#[pyo3(signature = (seed = 7, count = 30))]
fn verify<'py>(py: Python<'py>, seed: u64, count: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &run_verify(seed, count, &Caps::default()))
}

#[pymodule]
fn ising_ces_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(spin_partition, m)?)?;
    m.add_function(wrap_pyfunction!(even_subgraph_sum, m)?)?;
    m.add_function(wrap_pyfunction!(qwgt, m)?)?;
    m.add_function(wrap_pyfunction!(pfaffian, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
