#![allow(dead_code)]

use proptest::prelude::*;
use signed_flows::{Multigraph, Signature, SignedGraph};

/// Small loopless multigraphs, possibly disconnected.
pub fn multigraph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n), 1..=max_edges).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> =
                pairs.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
            Multigraph::new(n, edges).expect("loopless by construction")
        })
    })
}

pub fn signed_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = SignedGraph> {
    multigraph(max_vertices, max_edges).prop_flat_map(|g| {
        let m = g.edge_count();
        prop::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let neg = bits.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e);
            SignedGraph::new(g.clone(), Signature::from_negative_set(m, neg).unwrap()).unwrap()
        })
    })
}

/// Bridgeless graphs: a Hamiltonian cycle plus random chords.
pub fn bridgeless_signed(
    max_vertices: usize,
    max_chords: usize,
) -> impl Strategy<Value = SignedGraph> {
    (3..=max_vertices)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 1..n), 0..=max_chords)))
        .prop_flat_map(|(n, chords)| {
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend(chords.into_iter().map(|(u, d)| (u, (u + d) % n)));
            let g = Multigraph::new(n, edges).unwrap();
            let m = g.edge_count();
            prop::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let neg = bits.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e);
                SignedGraph::new(g.clone(), Signature::from_negative_set(m, neg).unwrap()).unwrap()
            })
        })
}

/// Signature obtained by switching at the vertices whose bit is set in `mask`.
pub fn switch_mask(g: &Multigraph, s: &Signature, mask: u64) -> Signature {
    let mut out = s.clone();
    for (e, edge) in g.edges().iter().enumerate() {
        if (mask >> edge.u & 1) != (mask >> edge.v & 1) {
            out.flip(e);
        }
    }
    out
}
