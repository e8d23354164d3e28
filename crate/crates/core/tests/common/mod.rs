#![allow(dead_code)]

use std::collections::HashSet;

use ising_ces::Graph;

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = k;
            idx[v][u] = k;
            k += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, found by edge augmentation with a min-over-permutations
/// canonical mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let idx = pair_index(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    // Edge image per permutation.
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| idx[p[u]][p[v]]).collect())
        .collect();
    let canon = |mask: u64| -> u64 {
        let mut best = u64::MAX;
        for map in &maps {
            let mut m = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                m |= 1 << map[e];
            }
            best = best.min(m);
        }
        best
    };
    let mut level: HashSet<u64> = HashSet::from([0]);
    let mut all: Vec<u64> = vec![0];
    for _ in 0..pairs.len() {
        let mut next = HashSet::new();
        for &g in &level {
            for e in 0..pairs.len() {
                if g >> e & 1 == 0 {
                    next.insert(canon(g | 1 << e));
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all.sort_unstable();
    all.into_iter()
        .map(|mask| {
            let edges = (0..pairs.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| pairs[e])
                .collect();
            Graph::new(n, edges).unwrap()
        })
        .collect()
}
