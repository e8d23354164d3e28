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

use thiserror::Error;

/// Errors raised by the library. Cap violations name the module that
/// enforced the cap so the CLI can report them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{module}: {what} exceeds cap ({value} > {cap})")]
    Cap {
        module: &'static str,
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("column {column} has an even number of Y factors ({count})")]
    EvenYColumn { column: usize, count: usize },
    #[error("column {column} touches {ones} qubits with X/Y; a graph edge needs exactly 2 (hypergraph column)")]
    HypergraphColumn { column: usize, ones: usize },
    #[error("edge index {index} out of range for {count} edges")]
    InvalidEdge { index: usize, count: usize },
    #[error("vertex {vertex} out of range for {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("skew matrix has odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("minor search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("amplitude has imaginary part {0:e}; real-gate convention violated")]
    NonReal(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
