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

//! Zero-field Ising partition functions.
//!
//! Three evaluators: the exhaustive spin sum, the signed even-subgraph
//! (cycle space) sum, and a polynomial-time Pfaffian route for planar
//! graphs. The even-subgraph sum `S` is the central quantity, since the
//! circuit side needs it at `lambda >= 1` where `Z` is undefined.

mod pfaffian;
mod planar;

pub use pfaffian::{pfaffian, SkewMatrix};
pub use planar::planar_even_subgraph_sum;

use crate::error::{Error, Result};
use crate::gf2::{for_each_in_span, BitMatrix, BitVector};
use crate::graph::Graph;
use crate::Caps;

/// A graph with bond signs: `w_e = 1` marks an antiferromagnetic bond.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingInstance {
    graph: Graph,
    w: BitVector,
    coupling: f64,
}

impl IsingInstance {
    pub fn new(graph: Graph, w: BitVector, coupling: f64) -> Result<Self> {
        if w.len() != graph.edge_count() {
            return Err(Error::Dimension(format!(
                "bond vector has length {}, graph has {} edges",
                w.len(),
                graph.edge_count()
            )));
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coupling must be positive, got {coupling}"
            )));
        }
        Ok(Self { graph, w, coupling })
    }

    /// All bonds ferromagnetic, `J = 1`.
    pub fn ferromagnetic(graph: Graph) -> Self {
        let w = BitVector::zeros(graph.edge_count());
        Self {
            graph,
            w,
            coupling: 1.0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn w(&self) -> &BitVector {
        &self.w
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `tanh(beta J)`.
    pub fn lambda(&self, beta: f64) -> f64 {
        (beta * self.coupling).tanh()
    }
}

/// Sum of `exp(-beta H)` over all `2^|V|` spin configurations.
pub fn brute_force_partition(inst: &IsingInstance, beta: f64, caps: &Caps) -> Result<f64> {
    let g = inst.graph();
    let n = g.vertex_count();
    if n > caps.max_spins {
        return Err(Error::Cap {
            module: "ising",
            what: "spin count",
            value: n,
            cap: caps.max_spins,
        });
    }
    let m = g.edge_count();
    // -beta H = beta J * sum_e s_e sigma_u sigma_v with s_e = +-1. Count
    // configurations by the integer bond sum, walking spins in Gray order.
    let inc = g.incidence_lists();
    let sign: Vec<i64> = (0..m)
        .map(|e| if inst.w().get(e) { -1 } else { 1 })
        .collect();
    let mut spin = vec![1i64; n];
    let mut total: i64 = sign.iter().sum();
    let mut histogram = vec![0u64; 2 * m + 1];
    histogram[(total + m as i64) as usize] += 1;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        for &e in &inc[v] {
            let u = g.opposite(e, v);
            total -= 2 * sign[e] * spin[v] * spin[u];
        }
        spin[v] = -spin[v];
        histogram[(total + m as i64) as usize] += 1;
    }
    let bj = beta * inst.coupling();
    Ok(histogram
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(k, &c)| c as f64 * (bj * (k as f64 - m as f64)).exp())
        .sum())
}

fn kernel_basis_capped(a: &BitMatrix, caps: &Caps) -> Result<Vec<BitVector>> {
    let basis = a.nullspace_vectors();
    if basis.len() > caps.max_nullity {
        return Err(Error::Cap {
            module: "ising",
            what: "kernel dimension",
            value: basis.len(),
            cap: caps.max_nullity,
        });
    }
    Ok(basis)
}

/// `sum_{b in ker A} (-1)^{b^t B b} x^|b| y^(n-|b|)`.
pub fn qwgt(a: &BitMatrix, b: &BitMatrix, x: f64, y: f64, caps: &Caps) -> Result<f64> {
    let n = a.cols();
    if b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "B must be {n}x{n} to match the columns of A, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let basis = kernel_basis_capped(a, caps)?;
    let xp: Vec<f64> = (0..=n).map(|k| x.powi(k as i32)).collect();
    let yp: Vec<f64> = (0..=n).map(|k| y.powi(k as i32)).collect();
    let mut sum = 0.0;
    for_each_in_span(&basis, n, |v| {
        let k = v.weight();
        let term = xp[k] * yp[n - k];
        if b.quadratic_form(v) {
            sum -= term;
        } else {
            sum += term;
        }
    });
    Ok(sum)
}

/// `sum_{a in cycle space} (-1)^{a.w} lambda^|a|`, by kernel enumeration.
pub fn signed_even_subgraph_sum(g: &Graph, w: &BitVector, lambda: f64, caps: &Caps) -> Result<f64> {
    if w.len() != g.edge_count() {
        return Err(Error::Dimension(format!(
            "bond vector has length {}, graph has {} edges",
            w.len(),
            g.edge_count()
        )));
    }
    let basis = kernel_basis_capped(&g.incidence_matrix(), caps)?;
    // Accumulate counts per (weight, sign) so the sum is formed once per
    // weight instead of once per kernel element.
    let m = g.edge_count();
    let mut plus = vec![0u64; m + 1];
    let mut minus = vec![0u64; m + 1];
    for_each_in_span(&basis, m, |a| {
        if a.dot(w) {
            minus[a.weight()] += 1;
        } else {
            plus[a.weight()] += 1;
        }
    });
    Ok((0..=m)
        .filter(|&k| plus[k] != minus[k])
        .map(|k| (plus[k] as f64 - minus[k] as f64) * lambda.powi(k as i32))
        .sum())
}

/// `Z = 2^|V| (1 - lambda^2)^(-|E|/2) S`, defined for `0 < lambda < 1`.
pub fn partition_from_sum(g: &Graph, s: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "partition function needs 0 < lambda < 1, got {lambda}"
        )));
    }
    let v = g.vertex_count() as f64;
    let e = g.edge_count() as f64;
    Ok(v.exp2() * (1.0 - lambda * lambda).powf(-e / 2.0) * s)
}
