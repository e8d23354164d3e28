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

//! Seeded instance generators shared by `verify` and the test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Angle, Circuit, Gate, Pauli};
use crate::gf2::BitVector;
use crate::graph::{is_planar, Graph};

/// Uniform random bond distribution.
pub fn random_bonds<R: Rng>(rng: &mut R, edges: usize) -> BitVector {
    let bits: Vec<bool> = (0..edges).map(|_| rng.random_bool(0.5)).collect();
    BitVector::from_bools(&bits)
}

fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| (order[rng.random_range(0..i)], order[i]))
        .collect()
}

/// A connected simple graph on `n` vertices with `m` edges (clamped to
/// `[n-1, n(n-1)/2]`). Edge order and endpoint orientation are shuffled.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let m = m.clamp(n - 1, n * (n - 1) / 2);
    let mut edges = random_tree(rng, n);
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| {
            !edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
        })
        .collect();
    rest.shuffle(rng);
    edges.extend(rest.into_iter().take(m - (n - 1)));
    finish(rng, n, edges)
}

/// A connected simple planar graph on `n` vertices: a random spanning tree
/// plus up to `extra` candidate edges, each kept only if planarity survives.
pub fn random_planar_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut g = Graph::new(n, random_tree(rng, n)).expect("tree edges are valid");
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    candidates.shuffle(rng);
    let mut added = 0;
    for (u, v) in candidates {
        if added == extra {
            break;
        }
        if g.edges()
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
        {
            continue;
        }
        let mut trial = g.clone();
        trial.add_edge(u, v).expect("valid edge");
        if is_planar(&trial).is_some() {
            g = trial;
            added += 1;
        }
    }
    finish(rng, n, g.edges().to_vec())
}

fn finish<R: Rng>(rng: &mut R, n: usize, mut edges: Vec<(usize, usize)>) -> Graph {
    edges.shuffle(rng);
    for e in &mut edges {
        if rng.random_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// A random gate with an odd number of Y factors.
pub fn random_real_gate<R: Rng>(rng: &mut R, qubits: usize) -> Gate {
    const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::Y];
    loop {
        let ops: Vec<Pauli> = (0..qubits).map(|_| ALL[rng.random_range(0..4)]).collect();
        if ops.iter().filter(|&&p| p == Pauli::Y).count() % 2 == 1 {
            return Gate::from_paulis(&ops);
        }
    }
}

/// A random circuit of real gates on `1..=max_qubits` qubits with
/// `1..=max_gates` gates and `lambda` drawn from `{0.1, ..., 0.9}`.
pub fn random_real_circuit<R: Rng>(rng: &mut R, max_qubits: usize, max_gates: usize) -> Circuit {
    let n = rng.random_range(1..=max_qubits);
    let count = rng.random_range(1..=max_gates);
    let gates = (0..count).map(|_| random_real_gate(rng, n)).collect();
    Circuit::new(n, gates, Angle::Lambda(random_lambda(rng))).expect("consistent sizes")
}

/// One of `0.1, 0.2, ..., 0.9`.
pub fn random_lambda<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(1..=9) as f64 / 10.0
}

/// A circuit whose gates are the edges of `g`: one endpoint carries Y, the
/// other X, and the remaining qubits get a Z with probability `z_density`.
pub fn random_graph_circuit<R: Rng>(
    rng: &mut R,
    g: &Graph,
    z_density: f64,
    angle: Angle,
) -> Circuit {
    let n = g.vertex_count();
    let gates = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut ops: Vec<Pauli> = (0..n)
                .map(|_| {
                    if rng.random_bool(z_density) {
                        Pauli::Z
                    } else {
                        Pauli::I
                    }
                })
                .collect();
            let (y, x) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
            ops[y] = Pauli::Y;
            ops[x] = Pauli::X;
            Gate::from_paulis(&ops)
        })
        .collect();
    Circuit::new(n, gates, angle).expect("consistent sizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::h_matrix;
    use crate::mapping::circuit_to_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.random_range(2..=8);
            let g = random_connected_graph(&mut rng, n, 2 * n);
            assert!(g.is_connected() && g.is_simple());
            let p = random_planar_graph(&mut rng, n, 3 * n);
            assert!(p.is_connected() && is_planar(&p).is_some());
            let c = random_real_circuit(&mut rng, 6, 8);
            assert!(c.gates().iter().all(Gate::is_real));
            let gc = random_graph_circuit(&mut rng, &g, 0.3, Angle::Lambda(0.5));
            let back = circuit_to_graph(&h_matrix(&gc)).unwrap();
            assert_eq!(back.edges().len(), g.edge_count());
            for (a, b) in back.edges().iter().zip(g.edges()) {
                assert!(a == b || (a.1, a.0) == *b);
            }
        }
    }

    #[test]
    fn seeded_output_is_stable() {
        let a = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(9), 6, 9);
        let b = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(9), 6, 9);
        assert_eq!(a, b);
    }
}
