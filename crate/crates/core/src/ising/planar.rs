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

//! Signed even-subgraph sums of planar graphs in polynomial time.
//!
//! The graph is reduced to maximum degree three (leaves pruned, high-degree
//! vertices split into chains joined by weight-1 edges), then every vertex
//! is replaced by a Fisher gadget so that even subgraphs correspond to
//! perfect matchings of the decorated graph with the same weight. A
//! Kasteleyn orientation turns the matching sum into a Pfaffian; its
//! global sign is fixed by the matching that uses no original edge.

use std::collections::HashMap;

use super::pfaffian::{pfaffian, SkewMatrix};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::{Graph, RotationSystem};

/// `sum_{a in cycle space} (-1)^{a.w} lambda^|a|` for a planar `g` with
/// embedding `rot`. Valid for any real `lambda`.
pub fn planar_even_subgraph_sum(
    g: &Graph,
    w: &BitVector,
    lambda: f64,
    rot: &RotationSystem,
) -> Result<f64> {
    if w.len() != g.edge_count() {
        return Err(Error::Dimension(format!(
            "bond vector has length {}, graph has {} edges",
            w.len(),
            g.edge_count()
        )));
    }
    rot.validate_planar(g)?;
    let reduced = reduce_degree(g, w, lambda, rot);
    let (d, weights, drot, reference) = decorate(&reduced);
    if d.vertex_count() == 0 {
        return Ok(1.0);
    }
    let drot = RotationSystem::new(&d, drot)?;
    if !drot.is_planar_embedding(&d) {
        return Err(Error::InvalidEmbedding(
            "decorated graph lost planarity".into(),
        ));
    }
    let forward = kasteleyn_orientation(&d, &drot);

    let mut a = SkewMatrix::zeros(d.vertex_count());
    for (e, &(u, v)) in d.edges().iter().enumerate() {
        if forward[e] {
            a.set(u, v, weights[e]);
        } else {
            a.set(v, u, weights[e]);
        }
    }
    let mut perm = Vec::with_capacity(d.vertex_count());
    let mut sign = 1.0;
    for &(i, j) in &reference {
        perm.push(i);
        perm.push(j);
        sign *= a.get(i, j);
    }
    sign *= permutation_sign(&perm);
    Ok(pfaffian(&a)? / sign)
}

/// Maximum-degree-3 multigraph with per-edge weights and a rotation.
struct Reduced {
    vertices: usize,
    ends: Vec<(usize, usize)>,
    weight: Vec<f64>,
    alive: Vec<bool>,
    rot: Vec<Vec<usize>>,
}

fn reduce_degree(g: &Graph, w: &BitVector, lambda: f64, rot: &RotationSystem) -> Reduced {
    let n = g.vertex_count();
    let mut r = Reduced {
        vertices: n,
        ends: g.edges().to_vec(),
        weight: (0..g.edge_count())
            .map(|e| if w.get(e) { -lambda } else { lambda })
            .collect(),
        alive: vec![true; g.edge_count()],
        rot: (0..n).map(|v| rot.rotation(v).to_vec()).collect(),
    };

    // A leaf's edge lies in no even subgraph.
    let mut stack: Vec<usize> = (0..n).filter(|&v| r.rot[v].len() == 1).collect();
    while let Some(v) = stack.pop() {
        if r.rot[v].len() != 1 {
            continue;
        }
        let e = r.rot[v][0];
        let (a, b) = r.ends[e];
        let u = if a == v { b } else { a };
        r.rot[v].clear();
        r.rot[u].retain(|&f| f != e);
        r.alive[e] = false;
        if r.rot[u].len() == 1 {
            stack.push(u);
        }
    }

    for v in 0..n {
        let d = r.rot[v].len();
        if d <= 3 {
            continue;
        }
        let old = std::mem::take(&mut r.rot[v]);
        let mut chain = vec![v];
        for _ in 0..d - 3 {
            chain.push(r.vertices);
            r.rot.push(Vec::new());
            r.vertices += 1;
        }
        let links: Vec<usize> = (0..d - 3)
            .map(|i| {
                r.ends.push((chain[i], chain[i + 1]));
                r.weight.push(1.0);
                r.alive.push(true);
                r.ends.len() - 1
            })
            .collect();
        let last = d - 3;
        r.rot[chain[0]] = vec![old[0], old[1], links[0]];
        for i in 1..last {
            r.rot[chain[i]] = vec![links[i - 1], old[i + 1], links[i]];
        }
        r.rot[chain[last]] = vec![links[last - 1], old[d - 2], old[d - 1]];
        for (i, &c) in chain.iter().enumerate().skip(1) {
            let moved: &[usize] = if i == last {
                &old[d - 2..]
            } else {
                std::slice::from_ref(&old[i + 1])
            };
            for &e in moved {
                let (a, b) = r.ends[e];
                r.ends[e] = if a == v { (c, b) } else { (a, c) };
            }
        }
    }
    r
}

/// Fisher decoration. Returns the decorated graph, its edge weights, a
/// rotation system and the reference perfect matching (gadget-internal
/// edges only, weight 1) that corresponds to the empty subgraph.
fn decorate(r: &Reduced) -> (Graph, Vec<f64>, Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let mut port: HashMap<(usize, usize), usize> = HashMap::new();
    let mut count = 0;
    for v in 0..r.vertices {
        for &e in &r.rot[v] {
            port.insert((v, e), count);
            count += 1;
        }
    }
    let mut ring_base = vec![usize::MAX; r.vertices];
    for v in 0..r.vertices {
        if r.rot[v].len() == 3 {
            ring_base[v] = count;
            count += 3;
        }
    }

    struct Builder {
        edges: Vec<(usize, usize)>,
        weights: Vec<f64>,
        rot: Vec<Vec<usize>>,
    }
    impl Builder {
        fn add(&mut self, a: usize, b: usize, wt: f64) -> usize {
            self.edges.push((a, b));
            self.weights.push(wt);
            self.edges.len() - 1
        }
    }
    let mut bld = Builder {
        edges: Vec::new(),
        weights: Vec::new(),
        rot: vec![Vec::new(); count],
    };
    let mut reference = Vec::new();

    let mut long = vec![usize::MAX; r.ends.len()];
    for e in 0..r.ends.len() {
        if r.alive[e] {
            let (a, b) = r.ends[e];
            long[e] = bld.add(port[&(a, e)], port[&(b, e)], r.weight[e]);
        }
    }
    for v in 0..r.vertices {
        let p: Vec<usize> = r.rot[v].iter().map(|&e| port[&(v, e)]).collect();
        for (&e, &pi) in r.rot[v].iter().zip(&p) {
            bld.rot[pi].push(long[e]);
        }
        match p.len() {
            0 => {}
            2 => {
                let id = bld.add(p[0], p[1], 1.0);
                bld.rot[p[0]].push(id);
                bld.rot[p[1]].push(id);
                reference.push((p[0], p[1]));
            }
            3 => {
                let q: Vec<usize> = (0..3).map(|i| ring_base[v] + i).collect();
                let spoke: Vec<usize> = (0..3).map(|i| bld.add(p[i], q[i], 1.0)).collect();
                // ring[i] joins q_i and q_{i+1}.
                let ring: Vec<usize> = (0..3).map(|i| bld.add(q[i], q[(i + 1) % 3], 1.0)).collect();
                for i in 0..3 {
                    bld.rot[p[i]].push(spoke[i]);
                    bld.rot[q[i]] = vec![spoke[i], ring[i], ring[(i + 2) % 3]];
                    reference.push((p[i], q[i]));
                }
            }
            d => unreachable!("vertex of degree {d} after reduction"),
        }
    }
    (
        Graph::new(count, bld.edges).expect("decoration produces valid edges"),
        bld.weights,
        bld.rot,
        reference,
    )
}

/// Orientation with an odd number of edges against the boundary walk on
/// every face except one per component. Returns `true` where edge `e` is
/// oriented from its first endpoint to its second.
fn kasteleyn_orientation(d: &Graph, rot: &RotationSystem) -> Vec<bool> {
    let m = d.edge_count();
    let faces = rot.faces(d);
    let dart_id = |e: usize, tail: usize| 2 * e + usize::from(d.edge(e).0 != tail);
    let mut face_of = vec![0; 2 * m];
    for (f, face) in faces.iter().enumerate() {
        for dart in face {
            face_of[dart_id(dart.edge, dart.tail)] = f;
        }
    }

    let inc = d.incidence_lists();
    let mut in_tree = vec![false; m];
    let mut seen = vec![false; d.vertex_count()];
    for s in 0..d.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = vec![s];
        let mut i = 0;
        while i < queue.len() {
            let v = queue[i];
            i += 1;
            for &e in &inc[v] {
                let u = d.opposite(e, v);
                if !seen[u] {
                    seen[u] = true;
                    in_tree[e] = true;
                    queue.push(u);
                }
            }
        }
    }

    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.len()];
    for e in 0..m {
        if !in_tree[e] {
            let (a, b) = d.edge(e);
            let (f1, f2) = (face_of[dart_id(e, a)], face_of[dart_id(e, b)]);
            dual[f1].push((f2, e));
            dual[f2].push((f1, e));
        }
    }
    let mut parent_edge = vec![usize::MAX; faces.len()];
    let mut reached = vec![false; faces.len()];
    let mut order = Vec::new();
    for root in 0..faces.len() {
        if reached[root] {
            continue;
        }
        reached[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let f = order[i];
            i += 1;
            for &(h, e) in &dual[f] {
                if !reached[h] {
                    reached[h] = true;
                    parent_edge[h] = e;
                    order.push(h);
                }
            }
        }
    }

    let mut forward = vec![true; m];
    let mut fixed = in_tree.clone();
    let against = |forward: &[bool], e: usize, tail: usize| (d.edge(e).0 == tail) != forward[e];
    for &f in order.iter().rev() {
        let pe = parent_edge[f];
        if pe == usize::MAX {
            continue;
        }
        let mut odd = false;
        let mut pe_tail = usize::MAX;
        for dart in &faces[f] {
            if dart.edge == pe {
                pe_tail = dart.tail;
                continue;
            }
            debug_assert!(fixed[dart.edge]);
            odd ^= against(&forward, dart.edge, dart.tail);
        }
        // The parent edge must supply the missing parity.
        let want_against = !odd;
        forward[pe] = (d.edge(pe).0 == pe_tail) != want_against;
        fixed[pe] = true;
    }
    for (f, face) in faces.iter().enumerate() {
        if parent_edge[f] != usize::MAX {
            let count = face
                .iter()
                .filter(|dt| against(&forward, dt.edge, dt.tail))
                .count();
            assert!(count % 2 == 1, "face {f} is not clockwise-odd");
        }
    }
    forward
}

fn permutation_sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1.0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
