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

//! Undirected multigraphs with indexed edges.
//!
//! Edge order matters: the incidence matrix of a graph is the reduced
//! H-matrix of the circuit it came from, column for column.

mod classify;
mod minor;
mod planarity;

pub use classify::{classify, euler_quick_pass, Classification};
pub use minor::{has_minor, is_isomorphic, MinorOp, MinorWitness};
pub use planarity::{is_planar, Dart, RotationSystem};

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorMode {
    Delete,
    Contract,
}

/// Basis of the cycle space, one bit per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpace {
    pub basis: Vec<BitVector>,
    pub nullity: usize,
}

impl CycleSpace {
    /// Number of even subgraphs, `None` if it does not fit in a `u128`.
    pub fn even_subgraph_count(&self) -> Option<u128> {
        1u128.checked_shl(self.nullity as u32)
    }
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= vertices {
                    return Err(Error::InvalidVertex {
                        vertex: x,
                        count: vertices,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn empty(vertices: usize) -> Self {
        Self {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        for x in [u, v] {
            if x >= self.vertices {
                return Err(Error::InvalidVertex {
                    vertex: x,
                    count: self.vertices,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Incident edge indices per vertex, in edge order.
    pub fn incidence_lists(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
        }
        inc
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Component label per vertex, labels numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let inc = self.incidence_lists();
        let mut label = vec![usize::MAX; self.vertices];
        let mut next = 0;
        for s in 0..self.vertices {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &inc[v] {
                    let u = self.opposite(e, v);
                    if label[u] == usize::MAX {
                        label[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The `|V| x |E|` vertex-edge incidence matrix.
    pub fn incidence_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.vertices, self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            m.set(u, e, true);
            m.set(v, e, true);
        }
        m
    }

    pub fn cycle_space(&self) -> CycleSpace {
        let basis = self.incidence_matrix().nullspace_vectors();
        CycleSpace {
            nullity: basis.len(),
            basis,
        }
    }

    /// Deletes or contracts edge `e`. Contraction merges the larger endpoint
    /// into the smaller one and drops the loops this creates; the remaining
    /// edges keep their relative order. With `drop_isolated`, vertices left
    /// without edges are removed.
    pub fn minor_step(&self, e: usize, mode: MinorMode, drop_isolated: bool) -> Result<Graph> {
        if e >= self.edges.len() {
            return Err(Error::InvalidEdge {
                index: e,
                count: self.edges.len(),
            });
        }
        let mut g = match mode {
            MinorMode::Delete => {
                let mut edges = self.edges.clone();
                edges.remove(e);
                Graph {
                    vertices: self.vertices,
                    edges,
                }
            }
            MinorMode::Contract => {
                let (a, b) = self.edges[e];
                let (keep, gone) = (a.min(b), a.max(b));
                let relabel = |x: usize| {
                    let x = if x == gone { keep } else { x };
                    if x > gone {
                        x - 1
                    } else {
                        x
                    }
                };
                let edges = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(f, _)| f != e)
                    .map(|(_, &(u, v))| (relabel(u), relabel(v)))
                    .filter(|&(u, v)| u != v)
                    .collect();
                Graph {
                    vertices: self.vertices - 1,
                    edges,
                }
            }
        };
        if drop_isolated {
            g = g.without_isolated();
        }
        Ok(g)
    }

    /// Removes vertices of degree zero, renumbering the rest in order.
    pub fn without_isolated(&self) -> Graph {
        let mut used = vec![false; self.vertices];
        for &(u, v) in &self.edges {
            used[u] = true;
            used[v] = true;
        }
        let mut map = vec![usize::MAX; self.vertices];
        let mut n = 0;
        for v in 0..self.vertices {
            if used[v] {
                map[v] = n;
                n += 1;
            }
        }
        Graph {
            vertices: n,
            edges: self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect(),
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { vertices: n, edges }
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph {
            vertices: a + b,
            edges,
        }
    }

    /// `K_{3,3}` without the edge `(2, 3)`, remaining edges in
    /// lexicographic order. Which edge is dropped does not matter up to
    /// isomorphism, but it does fix the gate order of the circuits the
    /// graph stands for.
    pub fn k33_minus_edge() -> Graph {
        let mut g = Graph::complete_bipartite(3, 3);
        g.edges.retain(|&e| e != (2, 3));
        g
    }

    pub fn cycle(n: usize) -> Graph {
        Graph {
            vertices: n,
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    pub fn path(n: usize) -> Graph {
        Graph {
            vertices: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Parses `graph n` followed by `edge u v [F|A]` lines. The optional
    /// flag marks the bond ferromagnetic (`w = 0`, the default) or
    /// antiferromagnetic (`w = 1`). `#` starts a comment.
    pub fn parse(text: &str) -> Result<(Graph, BitVector)> {
        let mut graph: Option<Graph> = None;
        let mut w = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields[0] {
                "graph" => {
                    if graph.is_some() {
                        return Err(err("duplicate graph header".into()));
                    }
                    let n = fields
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("expected `graph <vertices>`".into()))?;
                    if fields.len() > 2 {
                        return Err(err("trailing fields after vertex count".into()));
                    }
                    graph = Some(Graph::empty(n));
                }
                "edge" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before graph header".into()))?;
                    if fields.len() < 3 || fields.len() > 4 {
                        return Err(err("expected `edge <u> <v> [F|A]`".into()));
                    }
                    let parse_v = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| err(format!("bad vertex `{s}`")))
                    };
                    let (u, v) = (parse_v(fields[1])?, parse_v(fields[2])?);
                    let anti = match fields.get(3) {
                        None | Some(&"F") => false,
                        Some(&"A") => true,
                        Some(other) => {
                            return Err(err(format!("bond flag must be F or A, got `{other}`")))
                        }
                    };
                    g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
                    w.push(anti);
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        let graph = graph.ok_or(Error::Parse {
            line: 0,
            message: "missing `graph` header".into(),
        })?;
        Ok((graph, BitVector::from_bools(&w)))
    }

    /// Inverse of [`Graph::parse`]. Without `w` every bond is written as `F`.
    pub fn to_text(&self, w: Option<&BitVector>) -> String {
        let mut out = format!("graph {}\n", self.vertices);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let flag = if w.is_some_and(|w| w.get(e)) {
                'A'
            } else {
                'F'
            };
            out.push_str(&format!("edge {u} {v} {flag}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.vertices, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(Error::InvalidVertex { .. })
        ));
        assert!(matches!(
            Graph::new(2, vec![(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
    }

    #[test]
    fn cycle_space_counts() {
        assert_eq!(Graph::cycle(3).cycle_space().nullity, 1);
        assert_eq!(Graph::complete(4).cycle_space().nullity, 3);
        assert_eq!(Graph::path(5).cycle_space().nullity, 0);
        // Two triangles sharing nothing.
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let cs = g.cycle_space();
        assert_eq!(cs.nullity, 2);
        assert_eq!(cs.even_subgraph_count(), Some(4));
        for b in &cs.basis {
            assert!(g.incidence_matrix().mul_vec(b).unwrap().is_zero());
        }
    }

    #[test]
    fn contraction_merges_parallel_edges_into_loops_and_drops_them() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        let h = g.minor_step(0, MinorMode::Contract, false).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
    }

    #[test]
    fn contracting_k4_edge_gives_triangle_with_double_edges() {
        let h = Graph::complete(4)
            .minor_step(0, MinorMode::Contract, false)
            .unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 5);
        assert!(!h.is_simple());
    }

    #[test]
    fn delete_and_drop_isolated() {
        let g = Graph::path(3);
        let h = g.minor_step(1, MinorMode::Delete, true).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
        assert!(matches!(
            g.minor_step(5, MinorMode::Delete, false),
            Err(Error::InvalidEdge { index: 5, count: 2 })
        ));
    }

    #[test]
    fn text_round_trip() {
        let text = "graph 3\nedge 0 1 F\nedge 1 2 A\nedge 2 0 F\n";
        let (g, w) = Graph::parse(text).unwrap();
        assert_eq!(w.to_bit_string(), "010");
        assert_eq!(g.to_text(Some(&w)), text);
        let (g2, w2) = Graph::parse("# comment\ngraph 2\nedge 0 1 # ferro\n").unwrap();
        assert_eq!(g2.edges(), &[(0, 1)]);
        assert!(!w2.get(0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::parse("graph 2\nedge 0 5\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match Graph::parse("graph 2\nedge 0 1 X\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(Graph::parse("edge 0 1\n").is_err());
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn components() {
        let g = Graph::new(5, vec![(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 1, 2, 2]);
        assert!(!g.is_connected());
        assert!(Graph::complete(5).is_connected());
    }
}
