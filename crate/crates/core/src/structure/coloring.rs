//! Edge colorings of cubic graphs: 3-edge-colorings, Kotzig triples, resistance.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};

pub const DEFAULT_COLORING_BUDGET: u64 = 100_000_000;

/// A proper edge coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<u8>,
    pub color_count: u8,
}

impl EdgeColoring {
    pub fn class(&self, c: u8) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&e| self.colors[e] == c)
            .collect()
    }

    pub fn is_proper(&self, g: &Multigraph) -> bool {
        (0..g.vertex_count()).all(|v| {
            let hs = g.half_edges(v);
            hs.iter().enumerate().all(|(i, a)| {
                hs[i + 1..]
                    .iter()
                    .all(|b| self.colors[a.edge] != self.colors[b.edge])
            })
        })
    }
}

/// Edges in BFS order, so that each new edge meets already colored ones.
fn bfs_edge_order(g: &Multigraph) -> Vec<EdgeId> {
    let mut seen_edge = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::new();
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for h in g.half_edges(x) {
                if !seen_edge[h.edge] {
                    seen_edge[h.edge] = true;
                    order.push(h.edge);
                }
                let y = g.opposite(h.edge, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

fn color_free(g: &Multigraph, colors: &[u8], e: EdgeId, c: u8) -> bool {
    let edge = g.edge(e);
    [edge.u, edge.v].iter().all(|&w| {
        g.half_edges(w)
            .iter()
            .all(|h| h.edge == e || colors[h.edge] != c)
    })
}

const UNCOLORED: u8 = u8::MAX;

/// All proper 3-edge-colorings up to permutation of the colors.
pub fn three_edge_colorings(g: &Multigraph, budget: u64) -> Result<Vec<EdgeColoring>> {
    let order = bfs_edge_order(g);
    let mut colors = vec![UNCOLORED; g.edge_count()];
    let mut out = Vec::new();
    let mut nodes = 0;
    three_rec(
        g,
        &order,
        0,
        0,
        &mut colors,
        &mut out,
        &mut nodes,
        budget,
        usize::MAX,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn three_rec(
    g: &Multigraph,
    order: &[EdgeId],
    depth: usize,
    used: u8,
    colors: &mut Vec<u8>,
    out: &mut Vec<EdgeColoring>,
    nodes: &mut u64,
    budget: u64,
    limit: usize,
) -> Result<()> {
    if out.len() >= limit {
        return Ok(());
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted { budget });
    }
    if depth == order.len() {
        out.push(EdgeColoring {
            colors: colors.clone(),
            color_count: 3,
        });
        return Ok(());
    }
    let e = order[depth];
    // colors beyond the first unused one would only permute an earlier coloring
    for c in 0..(used + 1).min(3) {
        if color_free(g, colors, e, c) {
            colors[e] = c;
            three_rec(
                g,
                order,
                depth + 1,
                used.max(c + 1),
                colors,
                out,
                nodes,
                budget,
                limit,
            )?;
            colors[e] = UNCOLORED;
        }
    }
    Ok(())
}

/// Some proper 3-edge-coloring, if one exists.
pub fn three_edge_coloring(g: &Multigraph, budget: u64) -> Result<Option<EdgeColoring>> {
    let order = bfs_edge_order(g);
    let mut colors = vec![UNCOLORED; g.edge_count()];
    let mut out = Vec::new();
    let mut nodes = 0;
    three_rec(
        g,
        &order,
        0,
        0,
        &mut colors,
        &mut out,
        &mut nodes,
        budget,
        1,
    )?;
    Ok(out.pop())
}

/// Number of 3-edge-colorings counted up to permutation of the colors.
pub fn count_three_edge_colorings(g: &Multigraph, budget: u64) -> Result<usize> {
    Ok(three_edge_colorings(g, budget)?.len())
}

/// Whether the edge set forms a single circuit through every vertex.
pub fn is_hamiltonian_circuit(g: &Multigraph, edges: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    if n < 2 || edges.len() != n {
        return false;
    }
    let mut keep = vec![false; g.edge_count()];
    let mut deg = vec![0usize; n];
    for &e in edges {
        keep[e] = true;
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    deg.iter().all(|&d| d == 2) && g.components_where(|e| keep[e]).1 == 1
}

/// Three perfect matchings partitioning the edges whose pairwise unions are Hamiltonian circuits.
pub fn kotzig_check(g: &Multigraph, budget: u64) -> Result<Option<[Vec<EdgeId>; 3]>> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated(
            "Kotzig test needs a cubic graph".into(),
        ));
    }
    for coloring in three_edge_colorings(g, budget)? {
        let m = [coloring.class(0), coloring.class(1), coloring.class(2)];
        let ok = [(0, 1), (0, 2), (1, 2)].iter().all(|&(a, b)| {
            let mut union = m[a].clone();
            union.extend(&m[b]);
            is_hamiltonian_circuit(g, &union)
        });
        if ok {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Minimum size of a smallest color class over all proper 4-edge-colorings of a cubic graph.
///
/// The smallest class can always be renamed to color 3, so this is the least number of edges that
/// must get color 3 when colors 0, 1, 2 are used freely.
pub fn resistance(g: &Multigraph, budget: u64) -> Result<usize> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated(
            "resistance needs a cubic graph".into(),
        ));
    }
    let order = bfs_edge_order(g);
    let mut colors = vec![UNCOLORED; g.edge_count()];
    let mut best = g.edge_count() + 1;
    let mut nodes = 0;
    resistance_rec(
        g,
        &order,
        0,
        0,
        0,
        &mut colors,
        &mut best,
        &mut nodes,
        budget,
    )?;
    if best > g.edge_count() {
        return Err(Error::Internal(
            "cubic graph without a proper 4-edge-coloring".into(),
        ));
    }
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn resistance_rec(
    g: &Multigraph,
    order: &[EdgeId],
    depth: usize,
    used: u8,
    fourth: usize,
    colors: &mut Vec<u8>,
    best: &mut usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    if fourth >= *best {
        return Ok(());
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted { budget });
    }
    if depth == order.len() {
        *best = fourth;
        return Ok(());
    }
    let e = order[depth];
    for c in 0..(used + 1).min(3) {
        if color_free(g, colors, e, c) {
            colors[e] = c;
            resistance_rec(
                g,
                order,
                depth + 1,
                used.max(c + 1),
                fourth,
                colors,
                best,
                nodes,
                budget,
            )?;
            colors[e] = UNCOLORED;
        }
    }
    if color_free(g, colors, e, 3) {
        colors[e] = 3;
        resistance_rec(
            g,
            order,
            depth + 1,
            used,
            fourth + 1,
            colors,
            best,
            nodes,
            budget,
        )?;
        colors[e] = UNCOLORED;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_colorings() {
        let g = k4();
        let all = three_edge_colorings(&g, 1000).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_proper(&g));
        assert!(kotzig_check(&g, 1000).unwrap().is_some());
        assert_eq!(resistance(&g, 1000).unwrap(), 0);
    }

    #[test]
    fn k23_colorings() {
        let g = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(count_three_edge_colorings(&g, 1000).unwrap(), 1);
    }
}
