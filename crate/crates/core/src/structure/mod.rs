//! Factors, matchings, colorings, oddness, bipartite deletion sets and independence number.

mod coloring;
mod matching;

pub use coloring::{
    count_three_edge_colorings, is_hamiltonian_circuit, kotzig_check, resistance,
    three_edge_coloring, three_edge_colorings, EdgeColoring, DEFAULT_COLORING_BUDGET,
};
pub use matching::{
    count_perfect_matchings, maximum_matching, perfect_matching, perfect_matching_exhaustive,
    perfect_matchings, DEFAULT_MATCHING_BUDGET,
};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::spectrum::combinations;

/// Graphs up to this many vertices are matched by exhaustive search, larger ones by the blossom algorithm.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: usize = 24;

/// A spanning subgraph in which every vertex has degree `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWitness {
    pub edges: Vec<EdgeId>,
    pub t: usize,
}

/// The f-factor gadget: every edge `e = uv` becomes a path `x_{e,u} x_{e,v}`; every vertex `v`
/// of degree `d` gets `d - t` inner vertices joined to all of its `x_{e,v}`. Gadget edge `e` (for
/// `e < |E|`) is the middle edge of the path for `e`, so a perfect matching of the gadget
/// contains it exactly when `e` belongs to the `t`-factor.
pub fn factor_gadget(g: &Multigraph, t: usize) -> Option<Multigraph> {
    let m = g.edge_count();
    if (0..g.vertex_count()).any(|v| g.degree(v) < t) {
        return None;
    }
    let mut gadget = Multigraph::empty(2 * m);
    for e in 0..m {
        gadget.add_edge(2 * e, 2 * e + 1).expect("fresh vertices");
    }
    for v in 0..g.vertex_count() {
        for _ in 0..g.degree(v) - t {
            let inner = gadget.add_vertex();
            for h in g.half_edges(v) {
                gadget
                    .add_edge(inner, 2 * h.edge + h.end.index())
                    .expect("valid vertices");
            }
        }
    }
    Some(gadget)
}

/// A `t`-factor, or `None` if there is none.
pub fn has_t_factor(
    g: &Multigraph,
    t: usize,
    exhaustive_threshold: usize,
) -> Result<Option<FactorWitness>> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let Some(gadget) = factor_gadget(g, t) else {
        return Ok(None);
    };
    let m = g.edge_count();
    Ok(
        perfect_matching(&gadget, exhaustive_threshold).map(|matching| FactorWitness {
            edges: matching.into_iter().filter(|&e| e < m).collect(),
            t,
        }),
    )
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    perfect_matching(g, DEFAULT_EXHAUSTIVE_THRESHOLD).is_some()
}

/// Circuits of a 2-regular spanning subgraph given by its edge set, each as a list of edges in traversal order.
pub fn circuits_of(g: &Multigraph, edges: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let mut keep = vec![false; g.edge_count()];
    for &e in edges {
        keep[e] = true;
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for &start in edges {
        if used[start] {
            continue;
        }
        let mut circuit = vec![start];
        used[start] = true;
        let first = g.edge(start).u;
        let mut at = g.edge(start).v;
        while at != first {
            let next = g
                .half_edges(at)
                .iter()
                .map(|h| h.edge)
                .find(|&e| keep[e] && !used[e])
                .expect("2-regular subgraph");
            used[next] = true;
            circuit.push(next);
            at = g.opposite(next, at);
        }
        out.push(circuit);
    }
    out
}

/// Oddness with a witness: the fewest odd circuits in a 2-factor, and such a 2-factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oddness {
    pub oddness: usize,
    pub two_factor: Vec<EdgeId>,
    pub matching: Vec<EdgeId>,
}

/// Minimum number of odd circuits over the 2-factors of a cubic graph (complements of perfect matchings).
pub fn oddness(g: &Multigraph, budget: u64) -> Result<Oddness> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated(
            "oddness needs a cubic graph".into(),
        ));
    }
    let mut best: Option<Oddness> = None;
    for matching in perfect_matchings(g, budget)? {
        let mut in_m = vec![false; g.edge_count()];
        for &e in &matching {
            in_m[e] = true;
        }
        let two_factor: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !in_m[e]).collect();
        let odd = circuits_of(g, &two_factor)
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count();
        if best.as_ref().is_none_or(|b| odd < b.oddness) {
            best = Some(Oddness {
                oddness: odd,
                two_factor,
                matching,
            });
        }
    }
    best.ok_or_else(|| Error::HypothesisViolated("graph has no 1-factor".into()))
}

pub fn is_bipartite_after_removal(g: &Multigraph, x: &[EdgeId]) -> bool {
    let mut removed = vec![false; g.edge_count()];
    for &e in x {
        removed[e] = true;
    }
    g.is_bipartite_without(&removed)
}

/// Inclusion-minimal edge sets `X` with `G - X` bipartite and `|X| <= size_cap`, by size then lexicographically.
pub fn minimal_bipartite_deletion_sets(
    g: &Multigraph,
    size_cap: usize,
    budget: u64,
) -> Result<Vec<Vec<EdgeId>>> {
    let mut out = Vec::new();
    let mut examined = 0u64;
    for size in 0..=size_cap.min(g.edge_count()) {
        for x in combinations(g.edge_count(), size) {
            examined += 1;
            if examined > budget {
                return Err(Error::BudgetExhausted { budget });
            }
            if is_minimal_bipartite_deletion(g, &x) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// `G - X` is bipartite and putting back any single edge of `X` creates an odd circuit.
pub fn is_minimal_bipartite_deletion(g: &Multigraph, x: &[EdgeId]) -> bool {
    if !is_bipartite_after_removal(g, x) {
        return false;
    }
    (0..x.len()).all(|i| {
        let rest: Vec<EdgeId> = x
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        !is_bipartite_after_removal(g, &rest)
    })
}

/// Size of a largest independent vertex set, by branch and bound (at most 64 vertices).
pub fn independence_number(g: &Multigraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "vertex count for independence number",
            value: n,
            cap: 64,
        });
    }
    let mut nbr = vec![0u64; n];
    for e in g.edges() {
        nbr[e.u] |= 1 << e.v;
        nbr[e.v] |= 1 << e.u;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    mis(&nbr, all, 0, &mut best);
    Ok(best)
}

fn mis(nbr: &[u64], cand: u64, size: usize, best: &mut usize) {
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    if cand == 0 {
        *best = size;
        return;
    }
    // branch on a vertex of largest remaining degree
    let mut v = cand.trailing_zeros() as usize;
    let mut deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (nbr[w] & cand).count_ones();
        if d > deg {
            deg = d;
            v = w;
        }
    }
    if deg == 0 {
        *best = (*best).max(size + cand.count_ones() as usize);
        return;
    }
    mis(nbr, cand & !(1 << v) & !nbr[v], size + 1, best);
    mis(nbr, cand & !(1 << v), size, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_factors() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let f = has_t_factor(&k4, 1, 100).unwrap().unwrap();
        assert_eq!(f.edges.len(), 2);
        let f = has_t_factor(&k4, 2, 0).unwrap().unwrap();
        assert_eq!(f.edges.len(), 4);
        let tri = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(has_t_factor(&tri, 1, 100).unwrap().is_none());
        assert!(has_t_factor(&tri, 1, 0).unwrap().is_none());
    }

    #[test]
    fn independence_small() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(independence_number(&k4).unwrap(), 1);
        let c5 = Multigraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(independence_number(&c5).unwrap(), 2);
    }

    #[test]
    fn triangle_deletion_sets() {
        let tri = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            minimal_bipartite_deletion_sets(&tri, 3, 1000).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
    }
}
