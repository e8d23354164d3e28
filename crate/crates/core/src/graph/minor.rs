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

//! Minor containment by search over edge contractions.
//!
//! `H` is a minor of `G` exactly when some sequence of contractions of `G`
//! contains `H` as a subgraph, so the search only ever contracts and checks
//! for a subgraph at every node. Failed states are memoised on their
//! adjacency. Leaves are dropped when the pattern has minimum degree two,
//! and degree-2 vertices are smoothed when it has minimum degree three;
//! neither changes the answer.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Graph, MinorMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "edge", rename_all = "snake_case")]
pub enum MinorOp {
    Delete(usize),
    Contract(usize),
    DropIsolated,
}

/// A minor model together with an operation sequence that realises it.
/// Edge indices in `ops` refer to the graph as it stands before each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    /// Host vertices contracted onto each pattern vertex.
    pub branch_sets: Vec<Vec<usize>>,
    pub ops: Vec<MinorOp>,
}

impl MinorWitness {
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut cur = g.clone();
        for op in &self.ops {
            cur = match *op {
                MinorOp::Delete(e) => cur.minor_step(e, MinorMode::Delete, false)?,
                MinorOp::Contract(e) => cur.minor_step(e, MinorMode::Contract, false)?,
                MinorOp::DropIsolated => cur.without_isolated(),
            };
        }
        Ok(cur)
    }
}

#[derive(Clone)]
struct State {
    adj: Vec<u64>,
    alive: u64,
    rep: Vec<u64>,
}

impl State {
    fn contract(&mut self, keep: usize, gone: usize) {
        let (kb, gb) = (1u64 << keep, 1u64 << gone);
        let nbrs = self.adj[gone];
        self.adj[keep] = (self.adj[keep] | nbrs) & !(kb | gb);
        let mut m = nbrs & !kb;
        while m != 0 {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            self.adj[t] = (self.adj[t] & !gb) | kb;
        }
        self.adj[gone] = 0;
        self.alive &= !gb;
        self.rep[keep] |= self.rep[gone];
        self.rep[gone] = 0;
    }

    fn remove(&mut self, v: usize) {
        let mut m = self.adj[v];
        while m != 0 {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            self.adj[t] &= !(1u64 << v);
        }
        self.adj[v] = 0;
        self.alive &= !(1u64 << v);
        self.rep[v] = 0;
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn key(&self) -> Vec<u64> {
        let mut k = self.adj.clone();
        k.push(self.alive);
        k
    }
}

struct Pattern {
    adj: Vec<u64>,
    degree: Vec<u32>,
    order: Vec<usize>,
    edges: usize,
    min_degree: u32,
}

impl Pattern {
    fn new(p: &Graph) -> Result<Self> {
        let n = p.vertex_count();
        if n > 64 {
            return Err(Error::InvalidParameter(
                "pattern has more than 64 vertices".into(),
            ));
        }
        if !p.is_simple() {
            return Err(Error::InvalidParameter(
                "pattern must be a simple graph".into(),
            ));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in p.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let degree: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
        if degree.contains(&0) {
            return Err(Error::InvalidParameter(
                "pattern has isolated vertices".into(),
            ));
        }
        // Highest degree first, then grow along edges so every later vertex
        // has an already-placed neighbour where possible.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let frontier = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (adj[v] & placed).count_ones(),
                        degree[v],
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            order.push(frontier);
            placed |= 1 << frontier;
        }
        Ok(Self {
            edges: p.edge_count(),
            min_degree: degree.iter().copied().min().unwrap_or(0),
            adj,
            degree,
            order,
        })
    }

    /// Injective map from pattern vertices into `st` preserving adjacency.
    fn embed(&self, st: &State) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.adj.len()];
        if self.place(st, 0, 0, &mut map) {
            Some(map)
        } else {
            None
        }
    }

    fn place(&self, st: &State, depth: usize, used: u64, map: &mut [usize]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = st.alive & !used;
        let mut nb = self.adj[p];
        while nb != 0 {
            let q = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if map[q] != usize::MAX {
                cand &= st.adj[map[q]];
            }
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if st.degree(x) < self.degree[p] {
                continue;
            }
            map[p] = x;
            if self.place(st, depth + 1, used | 1 << x, map) {
                return true;
            }
        }
        map[p] = usize::MAX;
        false
    }
}

struct Search<'a> {
    pattern: &'a Pattern,
    failed: HashSet<Vec<u64>>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn reduce(&self, st: &mut State) {
        loop {
            let mut changed = false;
            let mut m = st.alive;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if st.alive >> v & 1 == 0 {
                    continue;
                }
                match st.degree(v) {
                    0 => {
                        st.remove(v);
                        changed = true;
                    }
                    1 if self.pattern.min_degree >= 2 => {
                        st.remove(v);
                        changed = true;
                    }
                    2 if self.pattern.min_degree >= 3 => {
                        let y = st.adj[v].trailing_zeros() as usize;
                        st.contract(y.min(v), y.max(v));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn run(&mut self, mut st: State) -> Result<Option<(State, Vec<usize>)>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        self.reduce(&mut st);
        let nv = st.alive.count_ones() as usize;
        let ne = st
            .adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2;
        if nv < self.pattern.adj.len() || ne < self.pattern.edges {
            return Ok(None);
        }
        let key = st.key();
        if self.failed.contains(&key) {
            return Ok(None);
        }
        if let Some(map) = self.pattern.embed(&st) {
            return Ok(Some((st, map)));
        }
        if nv > self.pattern.adj.len() {
            let mut m = st.alive;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                let mut up = st.adj[x] & !((2u64 << x) - 1);
                while up != 0 {
                    let y = up.trailing_zeros() as usize;
                    up &= up - 1;
                    let mut child = st.clone();
                    child.contract(x, y);
                    if let Some(found) = self.run(child)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

/// Searches for `pattern` as a minor of `g`, visiting at most `budget`
/// search nodes. The pattern must be simple without isolated vertices.
pub fn has_minor(g: &Graph, pattern: &Graph, budget: usize) -> Result<Option<MinorWitness>> {
    let pat = Pattern::new(pattern)?;
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::Cap {
            module: "graph",
            what: "vertex count for minor search",
            value: n,
            cap: 64,
        });
    }
    let mut st = State {
        adj: vec![0; n],
        alive: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        rep: (0..n).map(|v| 1u64 << v).collect(),
    };
    for &(u, v) in g.edges() {
        st.adj[u] |= 1 << v;
        st.adj[v] |= 1 << u;
    }
    let mut search = Search {
        pattern: &pat,
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let Some((st, map)) = search.run(st)? else {
        return Ok(None);
    };
    let branch_sets: Vec<Vec<usize>> = map
        .iter()
        .map(|&x| (0..n).filter(|&v| st.rep[x] >> v & 1 == 1).collect())
        .collect();
    let witness = build_witness(g, pattern, branch_sets);
    debug_assert!(is_isomorphic(&witness.replay(g).unwrap(), pattern));
    Ok(Some(witness))
}

fn build_witness(g: &Graph, pattern: &Graph, branch_sets: Vec<Vec<usize>>) -> MinorWitness {
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (h, set) in branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = h;
        }
    }
    let inc = g.incidence_lists();
    let mut keep = vec![false; g.edge_count()];
    let mut tree = Vec::new();
    for (h, set) in branch_sets.iter().enumerate() {
        let mut reached = vec![set[0]];
        let mut i = 0;
        let mut seen = std::collections::HashSet::from([set[0]]);
        while i < reached.len() {
            let v = reached[i];
            i += 1;
            for &e in &inc[v] {
                let u = g.opposite(e, v);
                if owner[u] == h && seen.insert(u) {
                    reached.push(u);
                    keep[e] = true;
                    tree.push(e);
                }
            }
        }
        assert_eq!(reached.len(), set.len(), "branch set {h} is disconnected");
    }
    for &(a, b) in pattern.edges() {
        let e = (0..g.edge_count())
            .find(|&e| {
                let (u, v) = g.edge(e);
                (owner[u] == a && owner[v] == b) || (owner[u] == b && owner[v] == a)
            })
            .expect("pattern edge has a host edge between its branch sets");
        keep[e] = true;
    }
    let mut ops: Vec<MinorOp> = (0..g.edge_count())
        .rev()
        .filter(|&e| !keep[e])
        .map(MinorOp::Delete)
        .collect();
    let mut current: Vec<usize> = (0..g.edge_count()).filter(|&e| keep[e]).collect();
    for t in tree {
        let idx = current.iter().position(|&e| e == t).unwrap();
        ops.push(MinorOp::Contract(idx));
        current.remove(idx);
    }
    ops.push(MinorOp::DropIsolated);
    MinorWitness { branch_sets, ops }
}

/// Isomorphism test for small multigraphs by backtracking on the
/// edge-multiplicity matrix.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mult = |g: &Graph| {
        let mut m = vec![vec![0usize; n]; n];
        for &(u, v) in g.edges() {
            m[u][v] += 1;
            m[v][u] += 1;
        }
        m
    };
    let (ma, mb) = (mult(a), mult(b));
    let deg = |m: &Vec<Vec<usize>>| {
        m.iter()
            .map(|r| r.iter().sum::<usize>())
            .collect::<Vec<_>>()
    };
    let (da, db) = (deg(&ma), deg(&mb));
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    fn extend(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        da: &[usize],
        db: &[usize],
    ) -> bool {
        let n = ma.len();
        if i == n {
            return true;
        }
        for x in 0..n {
            if used[x] || da[i] != db[x] {
                continue;
            }
            if (0..i).all(|j| ma[i][j] == mb[x][map[j]]) {
                map[i] = x;
                used[x] = true;
                if extend(i + 1, map, used, ma, mb, da, db) {
                    return true;
                }
                used[x] = false;
            }
        }
        false
    }
    extend(0, &mut vec![0; n], &mut vec![false; n], &ma, &mb, &da, &db)
}
