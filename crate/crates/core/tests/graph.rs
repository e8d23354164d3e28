mod common;

use ising_ces::graph::{
    classify, euler_quick_pass, has_minor, is_isomorphic, is_planar, MinorMode, MinorOp,
};
use ising_ces::random::{random_connected_graph, random_planar_graph};
use ising_ces::{BitVector, Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 1_000_000;

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).unwrap()
}

/// Replaces every edge by a path of random length.
fn subdivide(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut next = g.vertex_count();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..rng.random_range(0..3) {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges).unwrap()
}

#[test]
fn class_counts_on_small_vertex_sets() {
    let counts: Vec<usize> = (1..=7)
        .map(|n| common::nonisomorphic_graphs(n).len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
}

#[test]
fn planarity_agrees_with_wagner_on_seven_vertices() {
    // Graphs on fewer vertices appear here padded with isolated vertices.
    let k5 = Graph::complete(5);
    let k33 = Graph::complete_bipartite(3, 3);
    let mut nonplanar = 0;
    for g in common::nonisomorphic_graphs(7) {
        let embedding = is_planar(&g);
        let forbidden = has_minor(&g, &k5, BUDGET).unwrap().is_some()
            || has_minor(&g, &k33, BUDGET).unwrap().is_some();
        assert_eq!(embedding.is_some(), !forbidden, "{g:?}");
        if let Some(rot) = embedding {
            rot.validate_planar(&g).unwrap();
        } else {
            nonplanar += 1;
        }
    }
    // 822 of the 1044 classes are planar.
    assert_eq!(nonplanar, 1044 - 822);
}

#[test]
fn kuratowski_subdivisions_are_nonplanar() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for base in [
        Graph::complete(5),
        Graph::complete_bipartite(3, 3),
        petersen(),
    ] {
        assert!(is_planar(&base).is_none());
        for _ in 0..20 {
            let s = subdivide(&base, &mut rng);
            assert!(is_planar(&s).is_none());
        }
    }
}

#[test]
fn random_planar_graphs_embed() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.random_range(3..=12);
        let g = random_planar_graph(&mut rng, n, 3 * n);
        let rot = is_planar(&g).expect("generator keeps planarity");
        assert!(rot.is_planar_embedding(&g));
        assert!(g.edge_count() <= 3 * n - 6);
        let faces = rot.faces(&g).len();
        assert_eq!(n + faces, g.edge_count() + 2);
    }
}

#[test]
fn multigraphs_and_disconnected_graphs_embed() {
    let g = Graph::new(
        5,
        vec![(0, 1), (0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (3, 4)],
    )
    .unwrap();
    let rot = is_planar(&g).unwrap();
    rot.validate_planar(&g).unwrap();
    let mut doubled = Graph::complete(4);
    for (u, v) in Graph::complete(4).edges().to_vec() {
        doubled.add_edge(v, u).unwrap();
    }
    assert!(is_planar(&doubled).is_some());
    let mut k5 = Graph::complete(5);
    k5.add_edge(0, 1).unwrap();
    assert!(is_planar(&k5).is_none());
}

#[test]
fn minor_witnesses_replay_to_the_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let patterns = [
        Graph::complete(4),
        Graph::k33_minus_edge(),
        Graph::complete_bipartite(2, 3),
        Graph::complete(5),
        Graph::complete_bipartite(3, 3),
    ];
    let mut found = 0;
    for _ in 0..60 {
        let n = rng.random_range(4..=9);
        let m = rng.random_range(n..=2 * n + 2);
        let g = random_connected_graph(&mut rng, n, m);
        for p in &patterns {
            if let Some(w) = has_minor(&g, p, BUDGET).unwrap() {
                found += 1;
                let h = w.replay(&g).unwrap();
                assert!(is_isomorphic(&h, p), "{g:?} -> {h:?}");
                assert_eq!(w.branch_sets.len(), p.vertex_count());
                let mut seen: Vec<usize> = w.branch_sets.iter().flatten().copied().collect();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(
                    seen.len(),
                    w.branch_sets.iter().map(Vec::len).sum::<usize>()
                );
                // Deletions precede contractions.
                let first_contract = w.ops.iter().position(|o| matches!(o, MinorOp::Contract(_)));
                if let Some(i) = first_contract {
                    assert!(w.ops[i..].iter().all(|o| !matches!(o, MinorOp::Delete(_))));
                }
            }
        }
    }
    assert!(found > 30);
}

#[test]
fn minors_are_monotone_under_adding_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k4 = Graph::complete(4);
    for _ in 0..100 {
        let n = rng.random_range(4..=8);
        let m = rng.random_range(n - 1..=2 * n);
        let g = random_connected_graph(&mut rng, n, m);
        if has_minor(&g, &k4, BUDGET).unwrap().is_some() {
            let mut bigger = g.clone();
            bigger.add_edge(0, n - 1).unwrap();
            assert!(has_minor(&bigger, &k4, BUDGET).unwrap().is_some());
            for e in 0..g.edge_count() {
                let d = g.minor_step(e, MinorMode::Delete, false).unwrap();
                if has_minor(&d, &k4, BUDGET).unwrap().is_some() {
                    continue;
                }
                // A K4-free deletion must be K4-free after any further deletion.
                for f in 0..d.edge_count() {
                    let dd = d.minor_step(f, MinorMode::Delete, false).unwrap();
                    assert!(has_minor(&dd, &k4, BUDGET).unwrap().is_none());
                }
            }
        }
    }
}

#[test]
fn named_graph_classifications() {
    let c = classify(&petersen(), BUDGET).unwrap();
    assert!(!c.planar && c.k4_minor && !c.theta_obstruction_free);
    assert!(has_minor(&petersen(), &Graph::complete(5), BUDGET)
        .unwrap()
        .is_some());
    let k5 = Graph::complete(5);
    let k33 = Graph::complete_bipartite(3, 3);
    assert!(!euler_quick_pass(&k5) && is_planar(&k5).is_none());
    assert!(euler_quick_pass(&k33) && is_planar(&k33).is_none());
    let c = classify(&Graph::cycle(6), BUDGET).unwrap();
    assert!(c.outerplanar && c.theta_obstruction_free);
    let c = classify(&Graph::complete_bipartite(2, 3), BUDGET).unwrap();
    assert!(c.planar && !c.outerplanar && !c.k4_minor);
}

#[test]
fn budget_is_reported() {
    let g = Graph::complete_bipartite(4, 5);
    assert!(matches!(
        has_minor(&g, &Graph::complete(5), 10),
        Err(Error::BudgetExceeded(10))
    ));
}

#[test]
fn cycle_space_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n = rng.random_range(1..=9);
        let m = rng.random_range(0..=20);
        let mut g = random_connected_graph(&mut rng, n, m);
        if n > 1 && rng.random_bool(0.5) {
            g.add_edge(0, n - 1).unwrap();
        }
        let cs = g.cycle_space();
        assert_eq!(
            cs.nullity,
            g.edge_count() + g.component_count() - g.vertex_count()
        );
        let a = g.incidence_matrix();
        for v in &cs.basis {
            assert!(a.mul_vec(v).unwrap().is_zero());
        }
    }
}

#[test]
fn text_format_round_trip_and_errors() {
    let text = "# a triangle\ngraph 3\nedge 0 1 A\nedge 1 2\nedge 2 0 F # closing edge\n";
    let (g, w) = Graph::parse(text).unwrap();
    assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
    assert_eq!(w, BitVector::from_bits(&[1, 0, 0]));
    let (g2, w2) = Graph::parse(&g.to_text(Some(&w))).unwrap();
    assert_eq!((g2, w2), (g, w));
    for (bad, line) in [
        ("graph 3\nedge 0 3\n", 2),
        ("graph 3\nedge 1 1\n", 2),
        ("graph 2\nedge 0 1 Q\n", 2),
        ("edge 0 1\n", 1),
    ] {
        match Graph::parse(bad) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
            other => panic!("{bad:?} gave {other:?}"),
        }
    }
}

#[test]
fn contraction_keeps_parallel_edges() {
    let g = Graph::cycle(3);
    let h = g.minor_step(0, MinorMode::Contract, false).unwrap();
    assert_eq!(h.vertex_count(), 2);
    assert_eq!(h.edge_count(), 2);
    assert!(!h.is_simple());
}
