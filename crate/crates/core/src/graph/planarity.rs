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

//! Planarity testing and combinatorial embeddings.
//!
//! The tester splits the graph into biconnected blocks and embeds each one
//! with the Demoucron-Malgrange-Pertuiset path-addition algorithm. Block
//! embeddings are glued at cut vertices, then parallel edges are put back
//! next to their representative.

use std::collections::{HashMap, HashSet};

use super::Graph;
use crate::error::{Error, Result};

/// An edge traversed away from `tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub tail: usize,
}

/// Cyclic order of incident edge indices around every vertex.
///
/// Faces are traced by following a dart into its head and leaving along the
/// successor of the same edge in the head's rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotation: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Checks that `rotation[v]` lists each edge incident to `v` once.
    pub fn new(g: &Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != g.vertex_count() {
            return Err(Error::InvalidEmbedding(format!(
                "rotation covers {} vertices, graph has {}",
                rotation.len(),
                g.vertex_count()
            )));
        }
        let inc = g.incidence_lists();
        for (v, rot) in rotation.iter().enumerate() {
            let mut a = rot.clone();
            a.sort_unstable();
            if a != inc[v] {
                return Err(Error::InvalidEmbedding(format!(
                    "rotation at vertex {v} is not a permutation of its incident edges"
                )));
            }
        }
        Ok(Self { rotation })
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.rotation
    }

    /// Face boundaries as dart cycles. Every dart lies in exactly one face.
    pub fn faces(&self, g: &Graph) -> Vec<Vec<Dart>> {
        let id = |e: usize, tail: usize| 2 * e + usize::from(g.edge(e).0 != tail);
        let mut succ_out = vec![0; 2 * g.edge_count()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let f = rot[(i + 1) % rot.len()];
                succ_out[id(e, v)] = id(f, v);
            }
        }
        let dart = |d: usize| {
            let (a, b) = g.edge(d / 2);
            Dart {
                edge: d / 2,
                tail: if d % 2 == 0 { a } else { b },
            }
        };
        let mut seen = vec![false; 2 * g.edge_count()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(dart(d));
                d = succ_out[d ^ 1];
            }
            faces.push(face);
        }
        faces
    }

    /// True if every component satisfies `V - E + F = 2`.
    pub fn is_planar_embedding(&self, g: &Graph) -> bool {
        let comp = g.components();
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; ncomp];
        let mut e = vec![0i64; ncomp];
        let mut f = vec![0i64; ncomp];
        for x in 0..g.vertex_count() {
            v[comp[x]] += 1;
        }
        for &(a, _) in g.edges() {
            e[comp[a]] += 1;
        }
        for face in self.faces(g) {
            f[comp[face[0].tail]] += 1;
        }
        (0..ncomp).all(|c| e[c] == 0 || v[c] - e[c] + f[c] == 2)
    }

    /// Structural and Euler checks together.
    pub fn validate_planar(&self, g: &Graph) -> Result<()> {
        RotationSystem::new(g, self.rotation.clone())?;
        if !self.is_planar_embedding(g) {
            return Err(Error::InvalidEmbedding(
                "rotation system has positive genus".into(),
            ));
        }
        Ok(())
    }
}

/// A planar rotation system for `g`, or `None` if `g` is not planar.
pub fn is_planar(g: &Graph) -> Option<RotationSystem> {
    let n = g.vertex_count();
    let mut parallel: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let key = (u.min(v), u.max(v));
        let list = parallel.entry(key).or_default();
        if list.is_empty() {
            adj[u].push(v);
            adj[v].push(u);
        }
        list.push(e);
    }

    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(&adj) {
        if block.len() == 1 {
            let (u, v) = block[0];
            order[u].push(v);
            order[v].push(u);
            continue;
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> =
            block.iter().map(|&(u, v)| (local[&u], local[&v])).collect();
        let rot = embed_block(verts.len(), &edges)?;
        for (i, nbrs) in rot.into_iter().enumerate() {
            order[verts[i]].extend(nbrs.into_iter().map(|j| verts[j]));
        }
    }

    let rotation = order
        .iter()
        .enumerate()
        .map(|(v, nbrs)| {
            let mut rot = Vec::new();
            for &u in nbrs {
                let list = &parallel[&(u.min(v), u.max(v))];
                if v < u {
                    rot.extend(list.iter().copied());
                } else {
                    rot.extend(list.iter().rev().copied());
                }
            }
            rot
        })
        .collect();
    let rs = RotationSystem { rotation };
    assert!(
        rs.is_planar_embedding(g),
        "planarity tester produced a non-planar rotation"
    );
    Some(rs)
}

/// Edge sets of the biconnected blocks of a simple graph.
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent: usize) {
        s.disc[u] = s.time;
        s.low[u] = s.time;
        s.time += 1;
        for i in 0..s.adj[u].len() {
            let v = s.adj[u][i];
            if s.disc[v] == usize::MAX {
                s.stack.push((u, v));
                dfs(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(edge) = s.stack.pop() {
                        block.push(edge);
                        if edge == (u, v) {
                            break;
                        }
                    }
                    s.blocks.push(block);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == usize::MAX {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.blocks
}

enum Fragment {
    Chord(usize, usize),
    Component(Vec<usize>),
}

/// Embeds a biconnected simple graph with at least one cycle. Returns the
/// cyclic neighbour order at each vertex.
fn embed_block(k: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let cycle = find_cycle(&adj);
    let mut on = vec![false; k];
    let mut placed: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        on[v] = true;
        placed.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![
        cycle.clone(),
        cycle.iter().rev().copied().collect::<Vec<_>>(),
    ];

    while placed.len() < edges.len() {
        let mut frags: Vec<(Fragment, Vec<usize>)> = Vec::new();
        for &(u, v) in edges {
            if on[u] && on[v] && !placed.contains(&key(u, v)) {
                frags.push((Fragment::Chord(u, v), vec![u, v]));
            }
        }
        let mut seen = vec![false; k];
        for s in 0..k {
            if on[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut interior = vec![s];
            let mut attach = Vec::new();
            let mut i = 0;
            while i < interior.len() {
                let x = interior[i];
                i += 1;
                for &y in &adj[x] {
                    if on[y] {
                        attach.push(y);
                    } else if !seen[y] {
                        seen[y] = true;
                        interior.push(y);
                    }
                }
            }
            attach.sort_unstable();
            attach.dedup();
            frags.push((Fragment::Component(interior), attach));
        }

        let members: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; k];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice = None;
        for (fi, (_, attach)) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| attach.iter().all(|&a| members[f][a]))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_index) = choice.expect("at least one fragment remains");

        let path = match &frags[fi].0 {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Component(interior) => {
                let a = frags[fi].1[0];
                let mut inside = vec![false; k];
                for &x in interior {
                    inside[x] = true;
                }
                let mut parent = vec![usize::MAX; k];
                let mut queue: Vec<usize> = Vec::new();
                for &x in &adj[a] {
                    if inside[x] && parent[x] == usize::MAX {
                        parent[x] = a;
                        queue.push(x);
                    }
                }
                let mut end = None;
                let mut i = 0;
                'bfs: while i < queue.len() {
                    let x = queue[i];
                    i += 1;
                    for &y in &adj[x] {
                        if on[y] && y != a {
                            end = Some((x, y));
                            break 'bfs;
                        }
                        if inside[y] && parent[y] == usize::MAX {
                            parent[y] = x;
                            queue.push(y);
                        }
                    }
                }
                let (mut x, b) = end.expect("biconnected fragment has two attachments");
                let mut path = vec![b];
                while x != a {
                    path.push(x);
                    x = parent[x];
                }
                path.push(a);
                path.reverse();
                path
            }
        };

        let a = path[0];
        let b = *path.last().unwrap();
        let face = faces.swap_remove(face_index);
        let ia = face.iter().position(|&v| v == a).unwrap();
        let ib = face.iter().position(|&v| v == b).unwrap();
        let segment = |from: usize, to: usize| {
            let mut s = Vec::new();
            let mut i = from;
            loop {
                s.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % face.len();
            }
            s
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = segment(ia, ib);
        f1.extend(interior.iter().rev());
        let mut f2 = segment(ib, ia);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            placed.insert(key(w[0], w[1]));
        }
        for &v in &path {
            on[v] = true;
        }
    }

    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &faces {
        let m = f.len();
        for i in 0..m {
            let prev = f[(i + m - 1) % m];
            succ.insert((f[i], prev), f[(i + 1) % m]);
        }
    }
    let mut rot = Vec::with_capacity(k);
    for v in 0..k {
        let first = adj[v][0];
        let mut order = vec![first];
        let mut x = succ[&(v, first)];
        while x != first {
            order.push(x);
            x = succ[&(v, x)];
        }
        assert_eq!(
            order.len(),
            adj[v].len(),
            "face set does not close up at vertex {v}"
        );
        rot.push(order);
    }
    Some(rot)
}

/// A cycle through a non-tree edge of a BFS tree.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![0usize; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = vec![0];
    let mut i = 0;
    let mut chord = None;
    while i < queue.len() && chord.is_none() {
        let x = queue[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                depth[y] = depth[x] + 1;
                queue.push(y);
            } else if parent[x] != y {
                chord = Some((x, y));
                break;
            }
        }
    }
    let (mut x, mut y) = chord.expect("block with two or more edges has a cycle");
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[x] > depth[y] {
        left.push(x);
        x = parent[x];
    }
    while depth[y] > depth[x] {
        right.push(y);
        y = parent[y];
    }
    while x != y {
        left.push(x);
        right.push(y);
        x = parent[x];
        y = parent[y];
    }
    left.push(x);
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_planar_graphs() {
        for g in [
            Graph::complete(4),
            Graph::cycle(5),
            Graph::path(4),
            Graph::complete_bipartite(2, 3),
            Graph::k33_minus_edge(),
            Graph::empty(3),
        ] {
            let rot = is_planar(&g).expect("planar");
            rot.validate_planar(&g).unwrap();
        }
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        assert!(is_planar(&Graph::complete(5)).is_none());
        assert!(is_planar(&Graph::complete_bipartite(3, 3)).is_none());
    }

    #[test]
    fn k4_has_four_faces() {
        let g = Graph::complete(4);
        assert_eq!(is_planar(&g).unwrap().faces(&g).len(), 4);
    }

    #[test]
    fn multigraph_and_cut_vertex() {
        // Two triangles sharing vertex 2, plus a doubled edge.
        let g = Graph::new(
            5,
            vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 1)],
        )
        .unwrap();
        let rot = is_planar(&g).unwrap();
        rot.validate_planar(&g).unwrap();
        assert_eq!(rot.faces(&g).len(), 2 + g.edge_count() - g.vertex_count());
    }

    #[test]
    fn rejects_bad_rotations() {
        let g = Graph::complete(4);
        assert!(RotationSystem::new(&g, vec![vec![0, 1, 2]; 4]).is_err());
        assert!(RotationSystem::new(&g, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn k4_has_exactly_two_planar_rotations() {
        // 3-connected, so the embedding is unique up to reflection.
        let g = Graph::complete(4);
        let inc = g.incidence_lists();
        let mut planar = 0;
        for mask in 0..16u32 {
            let rot = (0..4)
                .map(|v| {
                    let mut r = inc[v].clone();
                    if mask >> v & 1 == 1 {
                        r.swap(0, 1);
                    }
                    r
                })
                .collect();
            let rs = RotationSystem::new(&g, rot).unwrap();
            if rs.is_planar_embedding(&g) {
                planar += 1;
            }
        }
        assert_eq!(planar, 2);
    }
}
