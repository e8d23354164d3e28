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

//! Deciding whether a Pauli-rotation circuit is classically simulatable by
//! mapping it onto a zero-field Ising model.
//!
//! The pipeline runs circuit -> H-matrix -> graph (`CH` as an incidence
//! matrix) -> bond distribution `w` over GF(2) -> forbidden-minor test ->
//! planar partition function. The pieces:
//!
//! - [`gf2`]: packed GF(2) matrices, row reduction, kernels, linear solves.
//! - [`circuit`]: gates, H-matrices, the `Q` sign matrix, a statevector
//!   oracle and the kernel-sum amplitude.
//! - [`graph`]: multigraphs, cycle spaces, minors, planar embeddings.
//! - [`ising`]: partition functions by spin sum, kernel sum and a
//!   Kasteleyn/Pfaffian evaluator for planar graphs.
//! - [`mapping`]: bond-distribution solvers and the end-to-end verdict.
//! - [`cli`]: the `ising-ces` command line.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod ising;
pub mod mapping;
pub mod random;

pub use circuit::{Angle, Circuit, Gate, HMatrix, Pauli};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use graph::{Graph, RotationSystem};
pub use ising::IsingInstance;
pub use mapping::{ces_decide, CesVerdict, WSolution};

/// Size limits for the exponential evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest circuit handed to the statevector simulator.
    pub max_qubits: usize,
    /// Largest kernel dimension enumerated by the kernel-sum evaluators.
    pub max_nullity: usize,
    /// Largest vertex count for the exhaustive spin sum.
    pub max_spins: usize,
    /// Node budget of the minor search.
    pub minor_budget: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_qubits: 20,
            max_nullity: 24,
            max_spins: 24,
            minor_budget: 1_000_000,
        }
    }
}
