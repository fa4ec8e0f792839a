mod common;

use proptest::prelude::*;
use signed_flows::constructions::{g_t, h_t, k2_3, k_n, k_nn, petersen};
use signed_flows::corpus::{cubic_corpus, named_corpus};
use signed_flows::signed::bridges;
use signed_flows::structure::{
    count_perfect_matchings, count_three_edge_colorings, has_t_factor, independence_number,
    is_bipartite_after_removal, is_hamiltonian_circuit, kotzig_check,
    minimal_bipartite_deletion_sets, oddness, perfect_matching, perfect_matching_exhaustive,
    perfect_matchings, resistance, three_edge_coloring, DEFAULT_COLORING_BUDGET,
    DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_MATCHING_BUDGET,
};
use signed_flows::Multigraph;

use common::multigraph;

/// Perfect matchings counted by pairing the lowest unmatched vertex in every possible way.
fn recount_matchings(g: &Multigraph, used: &mut Vec<bool>) -> u64 {
    let Some(v) = used.iter().position(|&u| !u) else {
        return 1;
    };
    used[v] = true;
    let mut total = 0;
    for h in g.half_edges(v) {
        let w = g.opposite(h.edge, v);
        if !used[w] {
            used[w] = true;
            total += recount_matchings(g, used);
            used[w] = false;
        }
    }
    used[v] = false;
    total
}

fn cycle(n: usize) -> Multigraph {
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn is_factor(g: &Multigraph, edges: &[usize], t: usize) -> bool {
    let mut deg = vec![0; g.vertex_count()];
    for &e in edges {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    deg.iter().all(|&d| d == t)
}

fn bridgeless_cubic() -> Vec<Multigraph> {
    cubic_corpus(8)
        .into_iter()
        .filter(|g| bridges(g).is_empty())
        .collect()
}

#[test]
fn t_factors() {
    for t in 1..=3 {
        let h = h_t(t).unwrap();
        assert!(has_t_factor(h.graph(), 1, DEFAULT_EXHAUSTIVE_THRESHOLD)
            .unwrap()
            .is_none());
    }
    for t in 2..=3 {
        let (gt, _) = g_t(t).unwrap();
        assert!(has_t_factor(gt.graph(), 1, DEFAULT_EXHAUSTIVE_THRESHOLD)
            .unwrap()
            .is_none());
        assert!(has_t_factor(gt.graph(), 1, 0).unwrap().is_none());
    }
    for g in [k_n(5).unwrap(), cycle(7), k_nn(4).unwrap(), k_n(7).unwrap()] {
        let w = has_t_factor(&g, 2, DEFAULT_EXHAUSTIVE_THRESHOLD)
            .unwrap()
            .unwrap();
        assert_eq!(w.t, 2);
        assert!(is_factor(&g, &w.edges, 2));
    }
    let p = petersen();
    let w = has_t_factor(&p, 1, DEFAULT_EXHAUSTIVE_THRESHOLD)
        .unwrap()
        .unwrap();
    assert!(is_factor(&p, &w.edges, 1));
    assert!(has_t_factor(&p, 0, DEFAULT_EXHAUSTIVE_THRESHOLD).is_err());
}

#[test]
fn perfect_matching_counts() {
    let k4 = k_n(4).unwrap();
    assert_eq!(
        perfect_matchings(&k4, DEFAULT_MATCHING_BUDGET)
            .unwrap()
            .len(),
        3
    );
    let p = petersen();
    let all = perfect_matchings(&p, DEFAULT_MATCHING_BUDGET).unwrap();
    assert_eq!(all.len(), 6);
    assert_eq!(recount_matchings(&p, &mut vec![false; 10]), 6);
    assert_eq!(count_perfect_matchings(&p).unwrap(), 6);
    assert!(all.iter().all(|m| is_factor(&p, m, 1)));
    assert!(perfect_matchings(&cycle(5), DEFAULT_MATCHING_BUDGET)
        .unwrap()
        .is_empty());
    assert_eq!(
        perfect_matchings(&k2_3(), DEFAULT_MATCHING_BUDGET)
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn every_edge_of_a_bridgeless_cubic_graph_is_in_a_perfect_matching() {
    for g in bridgeless_cubic().iter().chain([&petersen()]) {
        let all = perfect_matchings(g, DEFAULT_MATCHING_BUDGET).unwrap();
        for e in 0..g.edge_count() {
            assert!(
                all.iter().any(|m| m.contains(&e)),
                "edge {e} of {}",
                g.fingerprint()
            );
        }
    }
}

#[test]
fn oddness_and_resistance() {
    let p = petersen();
    let odd = oddness(&p, DEFAULT_MATCHING_BUDGET).unwrap();
    assert_eq!(odd.oddness, 2);
    assert!(is_factor(&p, &odd.two_factor, 2));
    assert_eq!(resistance(&p, DEFAULT_COLORING_BUDGET).unwrap(), 2);
    assert_eq!(
        resistance(&k_n(4).unwrap(), DEFAULT_COLORING_BUDGET).unwrap(),
        0
    );
    assert_eq!(
        oddness(&k_n(4).unwrap(), DEFAULT_MATCHING_BUDGET)
            .unwrap()
            .oddness,
        0
    );
    assert!(oddness(&k_n(5).unwrap(), DEFAULT_MATCHING_BUDGET).is_err());
}

#[test]
fn cubic_corpus_invariants() {
    let mut graphs = bridgeless_cubic();
    graphs.extend(
        named_corpus()
            .unwrap()
            .into_iter()
            .map(|e| e.graph.graph().clone())
            .filter(|g| g.is_cubic() && bridges(g).is_empty() && g.vertex_count() <= 12),
    );
    for g in &graphs {
        let colorable = three_edge_coloring(g, DEFAULT_COLORING_BUDGET)
            .unwrap()
            .is_some();
        let r = resistance(g, DEFAULT_COLORING_BUDGET).unwrap();
        let w = oddness(g, DEFAULT_MATCHING_BUDGET).unwrap().oddness;
        assert_ne!(r, 1);
        assert!(r <= w);
        assert_eq!(w % 2, 0);
        assert_eq!(colorable, r == 0);
        assert_eq!(colorable, w == 0);
    }
}

#[test]
fn bipartite_deletion_sets() {
    let k33 = k_nn(3).unwrap();
    assert!(is_bipartite_after_removal(&k33, &[]));
    assert_eq!(
        minimal_bipartite_deletion_sets(&k33, 3, 1 << 20).unwrap(),
        vec![Vec::<usize>::new()]
    );

    let triangle = cycle(3);
    assert_eq!(
        minimal_bipartite_deletion_sets(&triangle, 3, 1 << 20).unwrap(),
        vec![vec![0], vec![1], vec![2]]
    );

    let p = petersen();
    for a in 0..15 {
        assert!(!is_bipartite_after_removal(&p, &[a]));
        for b in a + 1..15 {
            assert!(!is_bipartite_after_removal(&p, &[a, b]));
        }
    }
    let sets = minimal_bipartite_deletion_sets(&p, 3, 1 << 20).unwrap();
    assert!(sets.iter().all(|x| x.len() >= 3));
}

#[test]
fn colorings_and_kotzig() {
    let k4 = k_n(4).unwrap();
    assert_eq!(
        count_three_edge_colorings(&k4, DEFAULT_COLORING_BUDGET).unwrap(),
        1
    );
    let triple = kotzig_check(&k4, DEFAULT_COLORING_BUDGET).unwrap().unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let union: Vec<usize> = triple[i].iter().chain(&triple[j]).copied().collect();
        assert!(is_hamiltonian_circuit(&k4, &union));
    }
    assert!(kotzig_check(&petersen(), DEFAULT_COLORING_BUDGET)
        .unwrap()
        .is_none());
    assert_eq!(
        count_three_edge_colorings(&petersen(), DEFAULT_COLORING_BUDGET).unwrap(),
        0
    );

    let k33 = k_nn(3).unwrap();
    assert!(three_edge_coloring(&k33, DEFAULT_COLORING_BUDGET)
        .unwrap()
        .is_some());
    if let Some(triple) = kotzig_check(&k33, DEFAULT_COLORING_BUDGET).unwrap() {
        let mut all: Vec<usize> = triple.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..9).collect::<Vec<_>>());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let union: Vec<usize> = triple[i].iter().chain(&triple[j]).copied().collect();
            assert!(is_hamiltonian_circuit(&k33, &union));
        }
    }
}

#[test]
fn independence_numbers() {
    for n in 2..=6 {
        assert_eq!(independence_number(&k_n(n).unwrap()).unwrap(), 1);
    }
    assert_eq!(independence_number(&k_nn(3).unwrap()).unwrap(), 3);
    assert_eq!(independence_number(&petersen()).unwrap(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blossom_agrees_with_exhaustive_search(g in multigraph(10, 16)) {
        let exhaustive = perfect_matching_exhaustive(&g);
        let blossom = perfect_matching(&g, 0);
        prop_assert_eq!(exhaustive.is_some(), blossom.is_some());
        if let Some(m) = blossom {
            prop_assert!(is_factor(&g, &m, 1));
        }
        let mut used = vec![false; g.vertex_count()];
        let count = recount_matchings(&g, &mut used);
        prop_assert_eq!(count_perfect_matchings(&g).unwrap(), count);
    }
}
