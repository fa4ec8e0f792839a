//! Perfect matchings: enumeration, exhaustive existence, Edmonds' blossom algorithm.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

pub const DEFAULT_MATCHING_BUDGET: u64 = 50_000_000;

/// All perfect matchings (each as sorted edge ids), in the order produced by always matching the
/// lowest unmatched vertex through its incident edges in id order.
pub fn perfect_matchings(g: &Multigraph, budget: u64) -> Result<Vec<Vec<EdgeId>>> {
    let mut out = Vec::new();
    if g.vertex_count() % 2 == 1 {
        return Ok(out);
    }
    let mut matched = vec![false; g.vertex_count()];
    let mut current = Vec::new();
    let mut nodes = 0u64;
    enumerate(g, &mut matched, &mut current, &mut out, &mut nodes, budget)?;
    Ok(out)
}

fn enumerate(
    g: &Multigraph,
    matched: &mut [bool],
    current: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted { budget });
    }
    let Some(v) = matched.iter().position(|&m| !m) else {
        let mut m = current.clone();
        m.sort_unstable();
        out.push(m);
        return Ok(());
    };
    matched[v] = true;
    for h in g.half_edges(v) {
        let w = g.opposite(h.edge, v);
        if matched[w] {
            continue;
        }
        matched[w] = true;
        current.push(h.edge);
        enumerate(g, matched, current, out, nodes, budget)?;
        current.pop();
        matched[w] = false;
    }
    matched[v] = false;
    Ok(())
}

/// Number of perfect matchings by memoized recursion over sets of unmatched vertices
/// (parallel edges counted separately). Requires at most 64 vertices.
pub fn count_perfect_matchings(g: &Multigraph) -> Result<u64> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "vertex count for matching count",
            value: n,
            cap: 64,
        });
    }
    let mut mult: HashMap<(VertexId, VertexId), u64> = HashMap::new();
    for e in g.edges() {
        *mult.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += 1;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(count_rec(g, &mult, full, &mut memo))
}

fn count_rec(
    g: &Multigraph,
    mult: &HashMap<(VertexId, VertexId), u64>,
    free: u64,
    memo: &mut HashMap<u64, u64>,
) -> u64 {
    if free == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&free) {
        return c;
    }
    let v = free.trailing_zeros() as usize;
    let mut total = 0;
    let mut seen = Vec::new();
    for h in g.half_edges(v) {
        let w = g.opposite(h.edge, v);
        if free >> w & 1 == 0 || seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let k = mult[&(v.min(w), v.max(w))];
        total += k * count_rec(g, mult, free & !(1 << v) & !(1 << w), memo);
    }
    memo.insert(free, total);
    total
}

/// Some perfect matching by backtracking, or `None`.
pub fn perfect_matching_exhaustive(g: &Multigraph) -> Option<Vec<EdgeId>> {
    if g.vertex_count() % 2 == 1 {
        return None;
    }
    let mut matched = vec![false; g.vertex_count()];
    let mut current = Vec::new();
    if exhaustive_rec(g, &mut matched, &mut current) {
        current.sort_unstable();
        Some(current)
    } else {
        None
    }
}

fn exhaustive_rec(g: &Multigraph, matched: &mut [bool], current: &mut Vec<EdgeId>) -> bool {
    let Some(v) = matched.iter().position(|&m| !m) else {
        return true;
    };
    matched[v] = true;
    for h in g.half_edges(v) {
        let w = g.opposite(h.edge, v);
        if matched[w] {
            continue;
        }
        matched[w] = true;
        current.push(h.edge);
        if exhaustive_rec(g, matched, current) {
            return true;
        }
        current.pop();
        matched[w] = false;
    }
    matched[v] = false;
    false
}

/// Maximum matching by Edmonds' blossom algorithm; returns the matched edge ids, sorted.
pub fn maximum_matching(g: &Multigraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut a: Vec<VertexId> = g
                .half_edges(v)
                .iter()
                .map(|h| g.opposite(h.edge, v))
                .collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut mate = vec![usize::MAX; n];
    // greedy start
    for v in 0..n {
        if mate[v] == usize::MAX {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == usize::MAX) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if mate[root] != usize::MAX {
            continue;
        }
        if let Some(end) = find_augmenting(&adj, &mate, root) {
            let mut v = end.1;
            let parent = end.0;
            while v != usize::MAX {
                let pv = parent[v];
                let ppv = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = ppv;
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        let w = mate[v];
        if w != usize::MAX && v < w {
            let e = g
                .half_edges(v)
                .iter()
                .map(|h| h.edge)
                .filter(|&e| g.opposite(e, v) == w)
                .min()
                .expect("matched vertices are adjacent");
            out.push(e);
        }
    }
    out.sort_unstable();
    out
}

fn find_augmenting(
    adj: &[Vec<VertexId>],
    mate: &[VertexId],
    root: VertexId,
) -> Option<(Vec<VertexId>, VertexId)> {
    let n = adj.len();
    let none = usize::MAX;
    let mut used = vec![false; n];
    let mut parent = vec![none; n];
    let mut base: Vec<VertexId> = (0..n).collect();
    used[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != none && parent[mate[to]] != none) {
                let cur = lca(mate, &base, &parent, v, to);
                let mut blossom = vec![false; n];
                mark_path(mate, &base, &mut parent, &mut blossom, v, cur, to);
                mark_path(mate, &base, &mut parent, &mut blossom, to, cur, v);
                for i in 0..n {
                    if blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == none {
                parent[to] = v;
                if mate[to] == none {
                    return Some((parent, to));
                }
                let next = mate[to];
                used[next] = true;
                queue.push_back(next);
            }
        }
    }
    None
}

fn lca(
    mate: &[VertexId],
    base: &[VertexId],
    parent: &[VertexId],
    mut a: VertexId,
    mut b: VertexId,
) -> VertexId {
    let mut seen = vec![false; mate.len()];
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == usize::MAX {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    mate: &[VertexId],
    base: &[VertexId],
    parent: &mut [VertexId],
    blossom: &mut [bool],
    mut v: VertexId,
    b: VertexId,
    mut child: VertexId,
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Some perfect matching, by exhaustive search up to `exhaustive_threshold` vertices and by the blossom algorithm above.
pub fn perfect_matching(g: &Multigraph, exhaustive_threshold: usize) -> Option<Vec<EdgeId>> {
    if g.vertex_count() <= exhaustive_threshold {
        perfect_matching_exhaustive(g)
    } else {
        let m = maximum_matching(g);
        (2 * m.len() == g.vertex_count()).then_some(m)
    }
}
