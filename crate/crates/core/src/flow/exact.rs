//! Exact circular flow number by enumerating orientations and solving a rational linear program for each.

use std::collections::VecDeque;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{EdgeId, Multigraph};
use crate::signed::{Admissibility, SignedGraph};

use super::lp::{solve, LinearProgram, LpOutcome, Q};
use super::number::{CircularFlowNumber, Completeness};
use super::{Flow, FlowCertificate, FlowKind, Orientation};

pub const DEFAULT_EXACT_EDGE_CAP: usize = 16;

/// Vertex sets up to this size get the full cut lower bound; larger graphs use single vertices only.
const FULL_CUT_VERTEX_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub edge_cap: usize,
    /// Enumerate orientations in the opposite order (an independent re-run of the same oracle).
    pub reverse: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            edge_cap: DEFAULT_EXACT_EDGE_CAP,
            reverse: false,
        }
    }
}

pub fn circular_flow_number_exact(
    sg: &SignedGraph,
    opts: ExactOptions,
) -> Result<CircularFlowNumber> {
    let g = sg.graph();
    if g.edge_count() > opts.edge_cap {
        return Err(Error::CapExceeded {
            what: "edge count for the exact oracle",
            value: g.edge_count(),
            cap: opts.edge_cap,
        });
    }
    if let Admissibility::NotAdmissible(reason) = sg.admissibility() {
        return Ok(CircularFlowNumber::Infinite(reason));
    }
    let neg = negations(sg);
    let mut scored: Vec<(Fraction, usize, Vec<i8>)> = orientations(g, &neg, opts.reverse)
        .into_iter()
        .enumerate()
        .filter_map(|(i, t)| cut_lower_bound(g, &neg, &t).map(|lb| (lb, i, t)))
        .collect();
    scored.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    let mut best: Option<(Fraction, Vec<i8>, Vec<Fraction>)> = None;
    for (lb, _, t) in scored {
        if best.as_ref().is_some_and(|(r, _, _)| lb >= *r) {
            break;
        }
        if let Some((r, values)) = solve_orientation(g, &neg, &t, None)? {
            if best.as_ref().is_none_or(|(b, _, _)| r < *b) {
                best = Some((r, t, values));
            }
        }
    }
    let (r, t, values) = best.ok_or_else(|| {
        Error::Internal("admissible graph has no feasible orientation in the exact oracle".into())
    })?;
    let cert = certificate(sg, &neg, &t, values, r)?;
    Ok(CircularFlowNumber::Finite {
        value: r,
        certificate: cert,
        completeness: Completeness::Exact,
    })
}

/// A nowhere-zero circular `r`-flow found by testing every orientation for feasibility at `r`, or `None`.
pub(crate) fn orientation_flow_at(
    sg: &SignedGraph,
    r: Fraction,
) -> Result<Option<FlowCertificate>> {
    let g = sg.graph();
    let neg = negations(sg);
    for t in orientations(g, &neg, false) {
        if cut_lower_bound(g, &neg, &t).is_none_or(|lb| lb > r) {
            continue;
        }
        if let Some((_, values)) = solve_orientation(g, &neg, &t, Some(r))? {
            return certificate(sg, &neg, &t, values, r).map(Some);
        }
    }
    Ok(None)
}

fn negations(sg: &SignedGraph) -> Vec<i8> {
    sg.signature()
        .signs()
        .iter()
        .map(|s| -s.value() as i8)
        .collect()
}

fn certificate(
    sg: &SignedGraph,
    neg: &[i8],
    tail: &[i8],
    values: Vec<Fraction>,
    r: Fraction,
) -> Result<FlowCertificate> {
    let orientation =
        Orientation::from_pairs(tail.iter().zip(neg).map(|(&a, &n)| [a, a * n]).collect())?;
    Ok(FlowCertificate::new(
        sg,
        Flow {
            orientation,
            values,
        },
        FlowKind::Circular { r },
    ))
}

/// Orientations, as `tau` at the `u` end of each edge, in which no vertex has all its half-edges pointing one way.
fn orientations(g: &Multigraph, neg: &[i8], reverse: bool) -> Vec<Vec<i8>> {
    let order = edge_order(g);
    let mut leaves = Vec::new();
    let mut tail = vec![0i8; g.edge_count()];
    enumerate(g, &order, neg, reverse, 0, &mut tail, &mut leaves);
    leaves
}

/// Edges in BFS discovery order so that vertices complete early.
fn edge_order(g: &Multigraph) -> Vec<EdgeId> {
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

fn enumerate(
    g: &Multigraph,
    order: &[EdgeId],
    neg: &[i8],
    reverse: bool,
    depth: usize,
    tail: &mut Vec<i8>,
    out: &mut Vec<Vec<i8>>,
) {
    if depth == order.len() {
        out.push(tail.clone());
        return;
    }
    let e = order[depth];
    let choices: &[i8] = match (depth, reverse) {
        (0, false) => &[1],
        (0, true) => &[-1],
        (_, false) => &[1, -1],
        (_, true) => &[-1, 1],
    };
    for &c in choices {
        tail[e] = c;
        let edge = g.edge(e);
        let ok = [edge.u, edge.v]
            .into_iter()
            .all(|w| vertex_ok(g, order, depth, neg, tail, w));
        if ok {
            enumerate(g, order, neg, reverse, depth + 1, tail, out);
        }
    }
    tail[e] = 0;
}

fn vertex_ok(
    g: &Multigraph,
    order: &[EdgeId],
    depth: usize,
    neg: &[i8],
    tail: &[i8],
    w: usize,
) -> bool {
    let assigned = |e: EdgeId| order[..=depth].contains(&e);
    let hs = g.half_edges(w);
    if !hs.iter().all(|h| assigned(h.edge)) {
        return true;
    }
    let dir = |h: &crate::graph::HalfEdge| {
        let a = tail[h.edge];
        if h.end.index() == 0 {
            a
        } else {
            a * neg[h.edge]
        }
    };
    let first = dir(&hs[0]);
    hs.iter().any(|h| dir(h) != first)
}

/// `1 + max(P/N, N/P)` over vertex sets, where `P` and `N` count outgoing and incoming half-edges
/// of the set (an edge with both ends inside counts twice). `None` if some set has flow only in one direction.
fn cut_lower_bound(g: &Multigraph, neg: &[i8], tail: &[i8]) -> Option<Fraction> {
    let n = g.vertex_count();
    let mut best = Fraction::integer(2);
    let mut consider = |member: &dyn Fn(usize) -> bool| -> bool {
        let (mut p, mut q) = (0i64, 0i64);
        for (e, edge) in g.edges().iter().enumerate() {
            let mut c = 0i64;
            if member(edge.u) {
                c += tail[e] as i64;
            }
            if member(edge.v) {
                c += (tail[e] * neg[e]) as i64;
            }
            if c > 0 {
                p += c;
            } else {
                q -= c;
            }
        }
        match (p, q) {
            (0, 0) => true,
            (0, _) | (_, 0) => false,
            _ => {
                let ratio = Fraction::new(p.max(q), p.min(q)).expect("positive denominator");
                best = best.max(Fraction::ONE + ratio);
                true
            }
        }
    };
    if n <= FULL_CUT_VERTEX_LIMIT {
        for mask in 1u32..(1u32 << n) {
            if !consider(&|v| mask >> v & 1 == 1) {
                return None;
            }
        }
    } else {
        for v in 0..n {
            if !consider(&|w| w == v) {
                return None;
            }
        }
    }
    Some(best)
}

/// Least `r` with a circular `r`-flow on this fixed orientation, and the optimal values.
/// With `fixed`, only flows with exactly that `r` are sought.
fn solve_orientation(
    g: &Multigraph,
    neg: &[i8],
    tail: &[i8],
    fixed: Option<Fraction>,
) -> Result<Option<(Fraction, Vec<Fraction>)>> {
    let m = g.edge_count();
    let n = g.vertex_count();
    // variables: g_e = f_e - 1 (m), rho = r - 2 (1), slack per edge (m)
    let cols = 2 * m + 1;
    let rho = m;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut vertex_rows = vec![vec![Q::zero(); cols]; n];
    let mut vertex_rhs = vec![Q::zero(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        let tu = tail[e] as i128;
        let tv = (tail[e] * neg[e]) as i128;
        vertex_rows[edge.u][e] += Q::from_integer(tu);
        vertex_rows[edge.v][e] += Q::from_integer(tv);
        vertex_rhs[edge.u] -= Q::from_integer(tu);
        vertex_rhs[edge.v] -= Q::from_integer(tv);
    }
    rows.extend(vertex_rows);
    rhs.extend(vertex_rhs);
    for e in 0..m {
        let mut row = vec![Q::zero(); cols];
        row[e] = Q::one();
        row[rho] = -Q::one();
        row[m + 1 + e] = Q::one();
        rows.push(row);
        rhs.push(Q::zero());
    }
    if let Some(r) = fixed {
        let mut row = vec![Q::zero(); cols];
        row[rho] = Q::one();
        rows.push(row);
        rhs.push(Q::new(r.numer() as i128, r.denom() as i128) - Q::from_integer(2));
    }
    let mut cost = vec![Q::zero(); cols];
    cost[rho] = Q::one();
    match solve(&LinearProgram { rows, rhs, cost }) {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Internal("flow program cannot be unbounded".into())),
        LpOutcome::Optimal { value, x } => {
            let r = to_fraction(value + Q::from_integer(2))?;
            let values = (0..m)
                .map(|e| to_fraction(x[e] + Q::one()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some((r, values)))
        }
    }
}

fn to_fraction(q: Q) -> Result<Fraction> {
    let overflow = || Error::Internal("rational out of range".into());
    let n = q.numer().to_i64().ok_or_else(overflow)?;
    let d = q.denom().to_i64().ok_or_else(overflow)?;
    Fraction::new(n, d)
}
