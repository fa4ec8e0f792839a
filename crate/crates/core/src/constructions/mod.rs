//! Graph families and explicit flow constructions, each returning a verified certificate.

mod cubic;
mod families;

pub use cubic::{
    bipartite_four_flow, four_flow_from_odd_edges, kotzig_six_flow, oddness_four_flow,
    BipartiteFourFlow, OddnessFourFlow,
};
pub use families::{
    g_n, g_t, h_t, h_t_triangle, k2_3, k_n, k_nn, k_prime_nn, make_family, petersen,
    with_negatives, Family, FamilySpec, GtLayout,
};

use crate::error::{Error, Result};
use crate::flow::{
    exists_integer_nzflow, flow_sum, Flow, FlowCertificate, FlowKind, Orientation, SearchLimits,
};
use crate::fraction::Fraction;
use crate::graph::{EdgeId, End, HalfEdge, Multigraph, VertexId};
use crate::signed::{balance_where, Balance, Signature, SignedGraph};
use crate::structure::{has_t_factor, perfect_matching, DEFAULT_EXHAUSTIVE_THRESHOLD};

/// Wraps a constructed flow into a certificate and checks it.
pub(crate) fn certified(sg: &SignedGraph, flow: Flow, kind: FlowKind) -> Result<FlowCertificate> {
    let cert = FlowCertificate::new(sg, flow, kind);
    cert.verify()
        .map_err(|v| Error::Internal(format!("constructed {kind} fails verification: {v}")))?;
    Ok(cert)
}

/// `[tau_u, tau_v]` for a positive edge traversed starting at `from`.
pub(crate) fn directed_pair(g: &Multigraph, e: EdgeId, from: VertexId) -> [i8; 2] {
    if g.edge(e).u == from {
        [1, -1]
    } else {
        [-1, 1]
    }
}

/// A circuit given by its edges in traversal order, as `(edge, tail)` pairs walking from the `u`
/// end of the first edge.
pub(crate) fn walk_circuit(g: &Multigraph, circuit: &[EdgeId]) -> Vec<(EdgeId, VertexId)> {
    let mut at = g.edge(circuit[0]).u;
    circuit
        .iter()
        .map(|&e| {
            let tail = at;
            at = g.opposite(e, at);
            (e, tail)
        })
        .collect()
}

fn mask(m: usize, edges: &[EdgeId]) -> Result<Vec<bool>> {
    let mut out = vec![false; m];
    for &e in edges {
        if e >= m {
            return Err(Error::EdgeOutOfRange { edge: e, count: m });
        }
        out[e] = true;
    }
    Ok(out)
}

/// Value 1 on every edge of an even, balanced edge set `keep`, 0 elsewhere.
///
/// The set is switched to all-positive, decomposed into closed trails, and the trail directions
/// are carried back through the switch.
pub(crate) fn eulerian_unit_flow(g: &Multigraph, s: &Signature, keep: &[bool]) -> Result<Flow> {
    let Balance::Balanced(at) = balance_where(g, s, |e| keep[e]) else {
        return Err(Error::HypothesisViolated("edge set is not balanced".into()));
    };
    let n = g.vertex_count();
    let mut degree = vec![0usize; n];
    for (e, edge) in g.edges().iter().enumerate() {
        if keep[e] {
            degree[edge.u] += 1;
            degree[edge.v] += 1;
        }
    }
    if degree.iter().any(|d| d % 2 == 1) {
        return Err(Error::HypothesisViolated(
            "edge set has a vertex of odd degree".into(),
        ));
    }
    let flip = at.mask(n);
    let mut flow = Flow::zero(s);
    let mut used = vec![false; g.edge_count()];
    for start in 0..n {
        loop {
            let mut at_v = start;
            let mut moved = false;
            while let Some(e) = g
                .half_edges(at_v)
                .iter()
                .map(|h| h.edge)
                .find(|&e| keep[e] && !used[e])
            {
                used[e] = true;
                moved = true;
                let mut pair = directed_pair(g, e, at_v);
                let edge = g.edge(e);
                if flip[edge.u] {
                    pair[0] = -pair[0];
                }
                if flip[edge.v] {
                    pair[1] = -pair[1];
                }
                flow.orientation.set(
                    HalfEdge {
                        edge: e,
                        end: End::U,
                    },
                    pair[0],
                );
                flow.orientation.set(
                    HalfEdge {
                        edge: e,
                        end: End::V,
                    },
                    pair[1],
                );
                flow.values[e] = Fraction::ONE;
                at_v = g.opposite(e, at_v);
            }
            if !moved {
                break;
            }
        }
    }
    Ok(flow)
}

/// The integer 5-flow and the circular `(3 + 2/t)`-flow on `H_t` with its canonical signature.
///
/// The first `t+1` triangles send flow into the hub through their bridges and the remaining `t`
/// receive it. Integer values: 1 on the first `2t` triangles, 2 on their bridges and on the last
/// triangle, 4 on the last bridge. Circular values: 1 and 2 on the first `t+1` triangles and
/// bridges, `1 + 1/t` and `2 + 2/t` on the others.
pub fn h_t_flows(t: usize) -> Result<(FlowCertificate, FlowCertificate)> {
    let sg = h_t(t)?;
    let triangles = 2 * t + 1;
    let m = sg.graph().edge_count();
    let mut tau = vec![[0i8; 2]; m];
    for i in 0..triangles {
        let (bridge, [xy, yz, zx]) = h_t_triangle(i);
        // extroverted triangles drain into the hub, introverted ones are fed by it
        let pairs = if i <= t {
            [[-1, 1], [-1, -1], [1, -1], [-1, 1]]
        } else {
            [[1, -1], [1, 1], [-1, 1], [1, -1]]
        };
        for (e, p) in [xy, yz, zx, bridge].into_iter().zip(pairs) {
            tau[e] = p;
        }
    }
    let orientation = Orientation::from_pairs(tau)?;
    let one = Fraction::ONE;
    let two = Fraction::integer(2);
    let tf = Fraction::integer(t as i64);
    let mut int_values = vec![one; m];
    let mut circ_values = vec![one; m];
    for i in 0..triangles {
        let (bridge, tri) = h_t_triangle(i);
        if i < 2 * t {
            int_values[bridge] = two;
        } else {
            int_values[bridge] = Fraction::integer(4);
            for e in tri {
                int_values[e] = two;
            }
        }
        if i <= t {
            circ_values[bridge] = two;
        } else {
            circ_values[bridge] = two + two / tf;
            for e in tri {
                circ_values[e] = one + one / tf;
            }
        }
    }
    let integer = certified(
        &sg,
        Flow {
            orientation: orientation.clone(),
            values: int_values,
        },
        FlowKind::Integer { k: 5 },
    )?;
    let circular = certified(
        &sg,
        Flow {
            orientation,
            values: circ_values,
        },
        FlowKind::Circular {
            r: Fraction::integer(3) + two / tf,
        },
    )?;
    Ok((integer, circular))
}

/// Where an edge of the doubled graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Copy `copy` (0 or 1) of an edge outside `X`.
    Copy { edge: EdgeId, copy: u8 },
    /// The edge joining the two copies of the given end of an edge of `X`.
    Link { edge: EdgeId, end: End },
}

/// Two copies of `G - X` joined, for every `uv` in `X`, by edges `uu'` and `vv'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleGraph {
    pub signed: SignedGraph,
    /// Vertex `v` of the first copy is `v`, its twin is `v + |V|`.
    pub vertex_offset: usize,
    pub edge_origin: Vec<EdgeOrigin>,
}

/// The doubled graph with the restricted signature on both copies and positive linking edges.
///
/// Edge layout: first-copy edges of `E - X` in id order, then second-copy edges, then for each
/// edge of `X` in ascending order the links at its `u` end and `v` end.
pub fn double_graph(g: &Multigraph, s: &Signature, x: &[EdgeId]) -> Result<DoubleGraph> {
    let m = g.edge_count();
    if s.len() != m {
        return Err(Error::SignatureLength {
            expected: m,
            found: s.len(),
        });
    }
    let in_x = mask(m, x)?;
    let n = g.vertex_count();
    let mut d = Multigraph::empty(2 * n);
    let mut origin = Vec::new();
    let mut negative = Vec::new();
    for copy in 0..2u8 {
        for (e, edge) in g.edges().iter().enumerate() {
            if in_x[e] {
                continue;
            }
            let off = copy as usize * n;
            let id = d.add_edge(edge.u + off, edge.v + off)?;
            if s.is_negative(e) {
                negative.push(id);
            }
            origin.push(EdgeOrigin::Copy { edge: e, copy });
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if in_x[e] {
            d.add_edge(edge.u, edge.u + n)?;
            origin.push(EdgeOrigin::Link {
                edge: e,
                end: End::U,
            });
            d.add_edge(edge.v, edge.v + n)?;
            origin.push(EdgeOrigin::Link {
                edge: e,
                end: End::V,
            });
        }
    }
    Ok(DoubleGraph {
        signed: SignedGraph::with_negative_set(d, negative)?,
        vertex_offset: n,
        edge_origin: origin,
    })
}

/// Carries a verified flow on `(g, s)` to the doubled graph: the first copy keeps the
/// orientation, the second copy has every half-edge reversed, and both links of an edge of `X`
/// carry its value with the half-edge directions of that edge at each end.
pub fn induced_flow_on_double(
    g: &Multigraph,
    s: &Signature,
    x: &[EdgeId],
    cert: &FlowCertificate,
) -> Result<FlowCertificate> {
    if cert.graph != *g || cert.signature != *s {
        return Err(Error::GraphMismatch);
    }
    if let Err(v) = cert.verify() {
        return Err(Error::HypothesisViolated(format!(
            "input flow does not verify: {v}"
        )));
    }
    let double = double_graph(g, s, x)?;
    let mut tau = Vec::with_capacity(double.edge_origin.len());
    let mut values = Vec::with_capacity(double.edge_origin.len());
    for origin in &double.edge_origin {
        match *origin {
            EdgeOrigin::Copy { edge, copy } => {
                let p = cert.flow.orientation.pair(edge);
                tau.push(if copy == 0 { p } else { [-p[0], -p[1]] });
                values.push(cert.flow.values[edge]);
            }
            EdgeOrigin::Link { edge, end } => {
                let t = cert.flow.orientation.pair(edge)[end.index()];
                tau.push([t, -t]);
                values.push(cert.flow.values[edge]);
            }
        }
    }
    let flow = Flow {
        orientation: Orientation::from_pairs(tau)?,
        values,
    };
    certified(&double.signed, flow, cert.kind)
}

/// An integer 3-flow on a `(2t+1)`-regular graph with a 1-factor.
///
/// A 1-factor `F1` and a 2-factor `F2` of `G - F1` span a cubic subgraph whose edges all become
/// negative: edges of `F1` are extroverted with value 2, edges of `F2` introverted with value 1.
/// The remaining even-regular part is positive and carries value 1 along closed trails.
pub fn three_flow_via_one_factor(g: &Multigraph) -> Result<FlowCertificate> {
    let Some(d) = g.regular_degree().filter(|d| d % 2 == 1) else {
        return Err(Error::HypothesisViolated(
            "graph is not regular of odd degree".into(),
        ));
    };
    let m = g.edge_count();
    let f1 = perfect_matching(g, DEFAULT_EXHAUSTIVE_THRESHOLD)
        .ok_or_else(|| Error::HypothesisViolated("graph has no 1-factor".into()))?;
    let in_f1 = mask(m, &f1)?;
    let mut in_f2 = vec![false; m];
    if d > 3 {
        let keep: Vec<bool> = in_f1.iter().map(|&b| !b).collect();
        let (rest, ids) = g.spanning_subgraph(&keep);
        let factor = has_t_factor(&rest, 2, DEFAULT_EXHAUSTIVE_THRESHOLD)?
            .ok_or_else(|| Error::Internal("even-regular graph without a 2-factor".into()))?;
        for e in factor.edges {
            in_f2[ids[e]] = true;
        }
    } else {
        for e in 0..m {
            in_f2[e] = !in_f1[e];
        }
    }
    let cubic: Vec<EdgeId> = (0..m).filter(|&e| in_f1[e] || in_f2[e]).collect();
    let s = Signature::from_negative_set(m, cubic.iter().copied())?;
    let remainder: Vec<bool> = (0..m).map(|e| !in_f1[e] && !in_f2[e]).collect();
    let mut flow = eulerian_unit_flow(g, &s, &remainder)?;
    for &e in &cubic {
        let (pair, value) = if in_f1[e] { ([-1, -1], 2) } else { ([1, 1], 1) };
        flow.orientation.set(
            HalfEdge {
                edge: e,
                end: End::U,
            },
            pair[0],
        );
        flow.orientation.set(
            HalfEdge {
                edge: e,
                end: End::V,
            },
            pair[1],
        );
        flow.values[e] = Fraction::integer(value);
    }
    certified(
        &SignedGraph::new(g.clone(), s)?,
        flow,
        FlowKind::Integer { k: 3 },
    )
}

/// `phi1 + 2*phi2` where `phi_i` is value 1 along closed trails of the even, balanced set `H_i`
/// and `H1 ∪ H2 = E`: an integer 4-flow.
pub fn eulerian_union_four_flow(
    g: &Multigraph,
    s: &Signature,
    h1: &[EdgeId],
    h2: &[EdgeId],
) -> Result<FlowCertificate> {
    let m = g.edge_count();
    let sg = SignedGraph::new(g.clone(), s.clone())?;
    let k1 = mask(m, h1)?;
    let k2 = mask(m, h2)?;
    if (0..m).any(|e| !k1[e] && !k2[e]) {
        return Err(Error::HypothesisViolated(
            "the two edge sets do not cover every edge".into(),
        ));
    }
    let f1 = eulerian_unit_flow(g, s, &k1)?;
    let f2 = eulerian_unit_flow(g, s, &k2)?;
    let sum = flow_sum(&sg, &f1, &f2, (1, 2))?;
    certified(&sg, sum.flow, FlowKind::Integer { k: 4 })
}

/// The nowhere-zero 6-flow `psi + 2 psi'` on `G_n` with an odd normal signature.
///
/// `negative` lists the digons `i` whose edge `3i` is negative; there must be an odd number, at
/// least 3. With `d1, d2` the first two, `psi = 2 phi1 + phi2` for unit flows on the Hamiltonian
/// circuits avoiding `3 d1` and `3 d2` respectively, and `psi'` is a unit flow on the positive
/// Hamiltonian circuit through every edge `3i+1`, directed like `psi` on `3 d1 + 1`.
pub fn g_n_six_flow(n: usize, negative: &[usize]) -> Result<FlowCertificate> {
    let mut digons = negative.to_vec();
    digons.sort_unstable();
    digons.dedup();
    if digons.len() < 3 || digons.len() % 2 == 0 || digons.iter().any(|&d| d >= n) {
        return Err(Error::HypothesisViolated(
            "need an odd number (at least 3) of distinct negative digons".into(),
        ));
    }
    let g = g_n(n)?;
    let m = g.edge_count();
    let s = Signature::from_negative_set(m, digons.iter().map(|&d| 3 * d))?;
    let sg = SignedGraph::new(g.clone(), s.clone())?;
    let (d1, d2) = (digons[0], digons[1]);
    let circuit_avoiding = |skip: usize| -> Vec<bool> {
        (0..m)
            .map(|e| match e % 3 {
                2 => true,
                0 => e / 3 != skip,
                _ => e / 3 == skip,
            })
            .collect()
    };
    let phi1 = eulerian_unit_flow(&g, &s, &circuit_avoiding(d1))?;
    let phi2 = eulerian_unit_flow(&g, &s, &circuit_avoiding(d2))?;
    let psi = flow_sum(&sg, &phi1, &phi2, (2, 1))?.flow;
    let positive: Vec<bool> = (0..m).map(|e| e % 3 != 0).collect();
    let psi2 = eulerian_unit_flow(&g, &s, &positive)?;
    let e1 = 3 * d1 + 1;
    let c = if psi.orientation.pair(e1) == psi2.orientation.pair(e1) {
        2
    } else {
        -2
    };
    let total = flow_sum(&sg, &psi, &psi2, (1, c))?;
    certified(&sg, total.flow, FlowKind::Integer { k: 6 })
}

/// An integer 3-flow on the core of `G_t` found by search, extended by 3-flows on each glued
/// copy of `K'_{2t+1,2t+1}`.
pub fn g_t_three_flow(t: usize, limits: SearchLimits) -> Result<FlowCertificate> {
    let (sg, layout) = g_t(t)?;
    let g = sg.graph();
    let core_keep: Vec<bool> = (0..g.edge_count()).map(|e| e < layout.core_edges).collect();
    let (core, _) = g.spanning_subgraph(&core_keep);
    let core = Multigraph::new(
        layout.core_vertices,
        core.edges().iter().map(|e| (e.u, e.v)),
    )?;
    let core_sg = SignedGraph::new(
        core.clone(),
        Signature::from_signs(sg.signature().signs()[..layout.core_edges].to_vec()),
    )?;
    let core_flow = exists_integer_nzflow(&core_sg, 3, limits)?
        .ok_or_else(|| Error::Internal("core of G_t has no 3-flow".into()))?;
    let gadget = SignedGraph::unsigned(k_prime_nn(2 * t + 1)?);
    let gadget_flow = exists_integer_nzflow(&gadget, 3, limits)?
        .ok_or_else(|| Error::Internal("K'_{n,n} has no 3-flow".into()))?;
    let mut tau = vec![[0i8; 2]; g.edge_count()];
    let mut values = vec![Fraction::ZERO; g.edge_count()];
    for e in 0..layout.core_edges {
        tau[e] = core_flow.flow.orientation.pair(e);
        values[e] = core_flow.flow.values[e];
    }
    for &(_, _, first_edge) in &layout.copies {
        for e in 0..gadget.graph().edge_count() {
            tau[first_edge + e] = gadget_flow.flow.orientation.pair(e);
            values[first_edge + e] = gadget_flow.flow.values[e];
        }
    }
    let flow = Flow {
        orientation: Orientation::from_pairs(tau)?,
        values,
    };
    certified(&sg, flow, FlowKind::Integer { k: 3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_t_flow_values() {
        for t in 1..=3 {
            let (int, circ) = h_t_flows(t).unwrap();
            assert!(int.is_valid() && circ.is_valid());
            let mut vals: Vec<i64> = int.flow.values.iter().map(|v| v.numer()).collect();
            vals.sort_unstable();
            vals.dedup();
            assert_eq!(vals, vec![1, 2, 4]);
        }
        let (int, _) = h_t_flows(1).unwrap();
        let mut bridges: Vec<i64> = (0..3)
            .map(|i| int.flow.values[h_t_triangle(i).0].numer())
            .collect();
        bridges.sort_unstable();
        assert_eq!(bridges, vec![2, 2, 4]);
    }

    #[test]
    fn doubling_shapes() {
        let g = petersen();
        let s = Signature::from_negative_set(15, [0, 7]).unwrap();
        let d = double_graph(&g, &s, &[]).unwrap();
        assert_eq!(d.signed.graph().edge_count(), 30);
        assert_eq!(d.signed.signature().negative_count(), 4);
        let d = double_graph(&g, &s, &[0, 7, 9]).unwrap();
        assert_eq!(d.signed.graph().vertex_count(), 20);
        assert_eq!(d.signed.graph().edge_count(), 30);
        assert_eq!(d.signed.signature().negative_count(), 0);
        assert!(d.signed.graph().is_cubic());
    }

    #[test]
    fn three_flows_from_factors() {
        for g in [k_n(4).unwrap(), k2_3(), k_n(6).unwrap(), petersen()] {
            assert!(three_flow_via_one_factor(&g).unwrap().is_valid());
        }
    }

    #[test]
    fn circuit_union_values() {
        let g = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = Signature::from_negative_set(4, [0, 2]).unwrap();
        let all = [0, 1, 2, 3];
        let cert = eulerian_union_four_flow(&g, &s, &all, &all).unwrap();
        assert!(cert.flow.values.iter().all(|&v| v == 3));
    }

    #[test]
    fn g2_gadget_flow() {
        let cert = g_t_three_flow(2, SearchLimits::default()).unwrap();
        assert!(cert.is_valid());
    }

    #[test]
    fn g_n_six_flows() {
        for (n, neg) in [
            (3, vec![0, 1, 2]),
            (4, vec![0, 1, 3]),
            (5, vec![1, 2, 4]),
            (5, vec![0, 1, 2, 3, 4]),
        ] {
            let cert = g_n_six_flow(n, &neg).unwrap();
            assert!(cert.flow.values.iter().all(|&v| v >= 1 && v <= 5));
            assert_eq!(cert.signature.negative_count(), neg.len());
        }
        assert!(g_n_six_flow(4, &[0, 1]).is_err());
        assert!(g_n_six_flow(3, &[0, 1, 5]).is_err());
    }
}
