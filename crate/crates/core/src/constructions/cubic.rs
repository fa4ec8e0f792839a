//! Flow constructions on cubic graphs: bipartite and oddness 4-flows, Kotzig 6-flows.

use crate::error::{Error, Result};
use crate::flow::{
    circular_flow_number, flow_sum, transport_flow, CircularOptions, Flow, FlowCertificate,
    FlowKind, Orientation,
};
use crate::fraction::Fraction;
use crate::graph::{EdgeId, End, HalfEdge, Multigraph, VertexId};
use crate::signed::{balance_where, bridges, switch, Balance, Signature, SignedGraph};
use crate::structure::{
    circuits_of, is_hamiltonian_circuit, oddness, perfect_matchings, three_edge_coloring,
    DEFAULT_COLORING_BUDGET, DEFAULT_MATCHING_BUDGET,
};

use super::{certified, directed_pair, eulerian_union_four_flow, walk_circuit};

/// Output of [`bipartite_four_flow`].
#[derive(Clone, Debug)]
pub struct BipartiteFourFlow {
    pub signature: Signature,
    pub certificate: FlowCertificate,
    /// The three consecutive circuit edges `e1, e2, e3`; `e1` and `e3` become negative.
    pub path: [EdgeId; 3],
    /// Circular flow number of the result, computed independently.
    pub circular_flow_number: Fraction,
}

/// A signature with two negative edges and an integer 4-flow on a bridgeless bipartite cubic graph.
///
/// Start from the 3-flow with value 2 on a perfect matching (directed into one side) and value 1
/// on the complementary 2-factor, rewritten so that each circuit is directed with values `±1`
/// alternating. On a circuit of length at least 4 pick consecutive edges `e1 e2 e3` with
/// `G - {e1, e3}` connected, reverse the outer half-edges of `e1` and `e3`, and add 2 along the
/// rest of the circuit.
pub fn bipartite_four_flow(g: &Multigraph) -> Result<BipartiteFourFlow> {
    if !g.is_cubic() || !g.is_bipartite() {
        return Err(Error::HypothesisViolated(
            "graph is not bipartite cubic".into(),
        ));
    }
    if !bridges(g).is_empty() {
        return Err(Error::HypothesisViolated("graph has a bridge".into()));
    }
    let m = g.edge_count();
    for matching in perfect_matchings(g, DEFAULT_MATCHING_BUDGET)? {
        let mut in_m = vec![false; m];
        for &e in &matching {
            in_m[e] = true;
        }
        let two_factor: Vec<EdgeId> = (0..m).filter(|&e| !in_m[e]).collect();
        for circuit in circuits_of(g, &two_factor) {
            if circuit.len() < 4 {
                continue;
            }
            let walk = walk_circuit(g, &circuit);
            let len = walk.len();
            for i in 0..len {
                let (e1, e2, e3) = (walk[i].0, walk[(i + 1) % len].0, walk[(i + 2) % len].0);
                if g.components_where(|e| e != e1 && e != e3).1 != 1 {
                    continue;
                }
                let rotated: Vec<(EdgeId, VertexId)> =
                    (0..len).map(|j| walk[(i + j) % len]).collect();
                return finish_bipartite(g, &in_m, &two_factor, &rotated, [e1, e2, e3]);
            }
        }
    }
    Err(Error::HypothesisViolated(
        "no circuit path with a connected complement".into(),
    ))
}

fn finish_bipartite(
    g: &Multigraph,
    in_m: &[bool],
    two_factor: &[EdgeId],
    walk: &[(EdgeId, VertexId)],
    path: [EdgeId; 3],
) -> Result<BipartiteFourFlow> {
    let m = g.edge_count();
    let n = g.vertex_count();
    // side[v] is true on the class containing v3, the head of e2
    let mut side = vec![None; n];
    let v3 = walk[2].1;
    side[v3] = Some(true);
    let mut stack = vec![v3];
    while let Some(x) = stack.pop() {
        for h in g.half_edges(x) {
            let y = g.opposite(h.edge, x);
            if side[y].is_none() {
                side[y] = Some(!side[x].unwrap());
                stack.push(y);
            }
        }
    }
    let in_a = |v: VertexId| side[v] == Some(true);
    // reference values along the chosen directions
    let mut tau = vec![[0i8; 2]; m];
    let mut signed = vec![0i64; m];
    for e in 0..m {
        if in_m[e] {
            let edge = g.edge(e);
            let from = if in_a(edge.u) { edge.u } else { edge.v };
            tau[e] = directed_pair(g, e, from);
            signed[e] = 2;
        }
    }
    let mut circuits = circuits_of(g, two_factor);
    circuits.retain(|c| !c.contains(&walk[0].0));
    let mut walks = vec![walk.to_vec()];
    walks.extend(circuits.iter().map(|c| walk_circuit(g, c)));
    for w in &walks {
        for &(e, tail) in w {
            tau[e] = directed_pair(g, e, tail);
            // the original 3-flow runs from the non-A side into A
            signed[e] = if in_a(tail) { -1 } else { 1 };
        }
    }
    let [e1, _, e3] = path;
    let v1 = walk[0].1;
    let v4 = g.opposite(e3, walk[2].1);
    let mut orientation = Orientation::from_pairs(tau)?;
    orientation.flip_half_edge(half_at(g, e1, v1));
    orientation.flip_half_edge(half_at(g, e3, v4));
    for &(e, _) in &walk[3..] {
        signed[e] += 2;
    }
    let s = orientation.implied_signature();
    let mut values = Vec::with_capacity(m);
    for (e, &x) in signed.iter().enumerate() {
        if x < 0 {
            orientation.reverse_edge(e);
        }
        values.push(Fraction::integer(x.abs()));
    }
    let sg = SignedGraph::new(g.clone(), s.clone())?;
    let certificate = certified(
        &sg,
        Flow {
            orientation,
            values,
        },
        FlowKind::Integer { k: 4 },
    )?;
    let fc = circular_flow_number(&sg, CircularOptions::default())?
        .value()
        .ok_or_else(|| Error::Internal("constructed signature is not flow-admissible".into()))?;
    if fc != 4 {
        return Err(Error::Internal(format!(
            "circular flow number {fc} instead of 4"
        )));
    }
    Ok(BipartiteFourFlow {
        signature: s,
        certificate,
        path,
        circular_flow_number: fc,
    })
}

fn half_at(g: &Multigraph, e: EdgeId, v: VertexId) -> HalfEdge {
    let end = if g.edge(e).u == v { End::U } else { End::V };
    HalfEdge { edge: e, end }
}

/// Output of [`oddness_four_flow`].
#[derive(Clone, Debug)]
pub struct OddnessFourFlow {
    pub signature: Signature,
    pub certificate: FlowCertificate,
    /// Perfect matching complementary to the minimum 2-factor used.
    pub matching: Vec<EdgeId>,
    /// One chosen edge per odd circuit; these are the negative edges.
    pub chosen: Vec<EdgeId>,
}

/// A signature with `ω(G)` negative edges and an integer 4-flow, for a cubic graph with a
/// 1-factor that is not 3-edge-colorable.
///
/// In a minimum 2-factor one edge of every odd circuit is chosen: an edge with a parallel
/// partner when the circuit has one; otherwise, on the circuit through the attachment vertex `x`
/// of a bridgeless end-component, the other circuit edge at the lower neighbor of `x`; otherwise
/// the lowest edge id.
pub fn oddness_four_flow(g: &Multigraph) -> Result<OddnessFourFlow> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated("graph is not cubic".into()));
    }
    if three_edge_coloring(g, DEFAULT_COLORING_BUDGET)?.is_some() {
        return Err(Error::HypothesisViolated(
            "graph is 3-edge-colorable; the empty set is 4-minimal".into(),
        ));
    }
    let odd = oddness(g, DEFAULT_MATCHING_BUDGET)?;
    let circuits: Vec<Vec<EdgeId>> = circuits_of(g, &odd.two_factor)
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .collect();
    let chosen = choose_odd_edges(g, &circuits);
    let certificate = four_flow_from_odd_edges(g, &odd.matching, &chosen)?;
    Ok(OddnessFourFlow {
        signature: certificate.signature.clone(),
        certificate,
        matching: odd.matching,
        chosen,
    })
}

fn has_parallel(g: &Multigraph, e: EdgeId) -> bool {
    let edge = g.edge(e);
    g.half_edges(edge.u)
        .iter()
        .any(|h| h.edge != e && g.opposite(h.edge, edge.u) == edge.v)
}

fn choose_odd_edges(g: &Multigraph, circuits: &[Vec<EdgeId>]) -> Vec<EdgeId> {
    let mut chosen: Vec<EdgeId> = circuits
        .iter()
        .map(|c| {
            c.iter()
                .copied()
                .filter(|&e| has_parallel(g, e))
                .min()
                .unwrap_or(*c.iter().min().unwrap())
        })
        .collect();
    let all_simple = circuits.iter().flatten().all(|&e| !has_parallel(g, e));
    if all_simple {
        if let Some((k, f)) = end_component_choice(g, circuits) {
            chosen[k] = f;
        }
    }
    chosen
}

/// For the first bridge (by id) with a bridgeless side whose attachment vertex lies on an odd
/// circuit: that circuit's index and the circuit edge at the lower neighbor `x1` of `x` other than `x x1`.
fn end_component_choice(g: &Multigraph, circuits: &[Vec<EdgeId>]) -> Option<(usize, EdgeId)> {
    let all_bridges = bridges(g);
    for &b in &all_bridges {
        let (labels, _) = g.components_where(|e| e != b);
        let edge = g.edge(b);
        for x in [edge.u, edge.v] {
            let side = labels[x];
            let bridgeless = all_bridges
                .iter()
                .all(|&c| c == b || labels[g.edge(c).u] != side);
            if !bridgeless {
                continue;
            }
            let Some(k) = circuits
                .iter()
                .position(|c| c.iter().any(|&e| g.edge(e).u == x || g.edge(e).v == x))
            else {
                continue;
            };
            let at_x: Vec<EdgeId> = circuits[k]
                .iter()
                .copied()
                .filter(|&e| g.edge(e).u == x || g.edge(e).v == x)
                .collect();
            let (xx1, x1) = at_x
                .iter()
                .map(|&e| (e, g.opposite(e, x)))
                .min_by_key(|&(e, y)| (y, e))?;
            let f = circuits[k]
                .iter()
                .copied()
                .find(|&e| e != xx1 && (g.edge(e).u == x1 || g.edge(e).v == x1))?;
            return Some((k, f));
        }
    }
    None
}

/// The 4-flow built from a perfect matching `F1` and one chosen edge on each odd circuit of
/// the complementary 2-factor.
///
/// Each chosen edge is subdivided and the new vertices are paired by new edges, which makes the
/// 2-factor even. With color 1 on the enlarged matching and colors 2/3 alternating on each
/// circuit (the half of a chosen edge at its `u` end colored 2), `ψ = 2φ1 + φ2` where `φ1`
/// directs the 1/2 circuits and `φ2` directs the 2/3 circuits against `φ1` on those halves.
/// Contracting the subdivisions turns every chosen edge negative with value 1.
pub fn four_flow_from_odd_edges(
    g: &Multigraph,
    matching: &[EdgeId],
    chosen: &[EdgeId],
) -> Result<FlowCertificate> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated("graph is not cubic".into()));
    }
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut in_f1 = vec![false; m];
    for &e in matching {
        g.check_edge(e)?;
        in_f1[e] = true;
    }
    let two_factor: Vec<EdgeId> = (0..m).filter(|&e| !in_f1[e]).collect();
    if matching.len() * 2 != n || two_factor.len() != n {
        return Err(Error::HypothesisViolated(
            "edge set is not a perfect matching".into(),
        ));
    }
    let mut deg = vec![0; n];
    for &e in matching {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    if deg.iter().any(|&d| d != 1) {
        return Err(Error::HypothesisViolated(
            "edge set is not a perfect matching".into(),
        ));
    }
    let odd: Vec<Vec<EdgeId>> = circuits_of(g, &two_factor)
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .collect();
    let mut chosen_circuit = vec![usize::MAX; m];
    for (i, c) in odd.iter().enumerate() {
        for &e in c {
            chosen_circuit[e] = i;
        }
    }
    let mut seen = vec![false; odd.len()];
    for &f in chosen {
        g.check_edge(f)?;
        let i = chosen_circuit[f];
        if i == usize::MAX || seen[i] {
            return Err(Error::HypothesisViolated(format!(
                "edge {f} is not the only choice on an odd circuit"
            )));
        }
        seen[i] = true;
    }
    if seen.iter().any(|&s| !s) || chosen.is_empty() {
        return Err(Error::HypothesisViolated(
            "need exactly one chosen edge per odd circuit".into(),
        ));
    }

    if chosen.len() % 2 == 1 {
        return Err(Error::Internal(
            "odd number of odd circuits in a cubic graph".into(),
        ));
    }

    // the subdivided graph: edge f keeps its id for the half at its u end
    let mut second_half = vec![usize::MAX; m];
    let mut gp_edges: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    for (i, &f) in chosen.iter().enumerate() {
        let u_i = n + i;
        let edge = g.edge(f);
        gp_edges[f] = (edge.u, u_i);
        second_half[f] = gp_edges.len();
        gp_edges.push((u_i, edge.v));
    }
    let mut links = Vec::new();
    for k in 0..chosen.len() / 2 {
        links.push(gp_edges.len());
        gp_edges.push((n + 2 * k, n + 2 * k + 1));
    }
    let gp = Multigraph::new(n + chosen.len(), gp_edges)?;
    let mp = gp.edge_count();
    let mut color = vec![0u8; mp];
    for e in 0..mp {
        if (e < m && in_f1[e]) || links.contains(&e) {
            color[e] = 1;
        }
    }
    let even: Vec<EdgeId> = (0..mp).filter(|&e| color[e] == 0).collect();
    let circuits = circuits_of(&gp, &even);
    for c in &circuits {
        let start = c
            .iter()
            .position(|&e| e < m && second_half[e] != usize::MAX)
            .unwrap_or(0);
        for j in 0..c.len() {
            color[c[(start + j) % c.len()]] = if j % 2 == 0 { 2 } else { 3 };
        }
    }
    let unsigned = Signature::all_positive(mp);
    let sgp = SignedGraph::new(gp.clone(), unsigned.clone())?;
    let one_two: Vec<EdgeId> = (0..mp).filter(|&e| color[e] != 3).collect();
    let mut phi1 = Flow::zero(&unsigned);
    for c in circuits_of(&gp, &one_two) {
        for (e, tail) in walk_circuit(&gp, &c) {
            set_directed(&gp, &mut phi1, e, tail);
        }
    }
    let mut phi2 = Flow::zero(&unsigned);
    for c in &circuits {
        let mut walk = walk_circuit(&gp, c);
        let agrees = walk.iter().any(|&(e, _)| {
            e < m
                && second_half[e] != usize::MAX
                && phi1.orientation.pair(e) == directed_pair(&gp, e, walk_tail(&walk, e))
        });
        if agrees {
            walk = reversed(&gp, &walk);
        }
        for (e, tail) in walk {
            set_directed(&gp, &mut phi2, e, tail);
        }
    }
    let psi = flow_sum(&sgp, &phi1, &phi2, (2, 1))?.flow;

    let mut tau = vec![[0i8; 2]; m];
    let mut values = vec![Fraction::ZERO; m];
    for e in 0..m {
        let p = psi.orientation.pair(e);
        if second_half[e] == usize::MAX {
            tau[e] = p;
        } else {
            let q = psi.orientation.pair(second_half[e]);
            tau[e] = [p[0], q[1]];
            if psi.values[e] != psi.values[second_half[e]] {
                return Err(Error::Internal(
                    "subdivided halves carry different values".into(),
                ));
            }
        }
        values[e] = psi.values[e];
    }
    let orientation = Orientation::from_pairs(tau)?;
    let s = orientation.implied_signature();
    let sg = SignedGraph::new(g.clone(), s)?;
    certified(
        &sg,
        Flow {
            orientation,
            values,
        },
        FlowKind::Integer { k: 4 },
    )
}

fn set_directed(g: &Multigraph, f: &mut Flow, e: EdgeId, tail: VertexId) {
    let p = directed_pair(g, e, tail);
    f.orientation.set(
        HalfEdge {
            edge: e,
            end: End::U,
        },
        p[0],
    );
    f.orientation.set(
        HalfEdge {
            edge: e,
            end: End::V,
        },
        p[1],
    );
    f.values[e] = Fraction::ONE;
}

fn walk_tail(walk: &[(EdgeId, VertexId)], e: EdgeId) -> VertexId {
    walk.iter().find(|&&(x, _)| x == e).expect("edge on walk").1
}

fn reversed(g: &Multigraph, walk: &[(EdgeId, VertexId)]) -> Vec<(EdgeId, VertexId)> {
    walk.iter()
        .rev()
        .map(|&(e, tail)| (e, g.opposite(e, tail)))
        .collect()
}

/// An integer flow with values in `[1, 5]` on a flow-admissible cubic graph from three perfect
/// matchings with pairwise Hamiltonian unions.
///
/// Two matchings `M1, M2` with `|N ∩ M1| ≡ |N ∩ M2| (mod 2)` are taken in the order (1,2),
/// (1,3), (2,3) and the signature is switched positive on `C = M1 ∪ M2`. If `M3` then holds an
/// even number of negative edges, `C` and `M1 ∪ M3` are balanced and give a 4-flow. Otherwise
/// the lowest negative edge `e` is made positive, `φ = φ_{M1∪M3} + 2φ_C`, and the half-edge of
/// `e` at its tail `x` is reversed again; the excess of 2 at `x` is routed along `C`: +2 from
/// `x` to the first endpoint `u` of the lowest introverted edge `f`, +1 from `u` to its other
/// endpoint `w`, and `f` is raised to 2.
pub fn kotzig_six_flow(
    g: &Multigraph,
    s: &Signature,
    m: [&[EdgeId]; 3],
) -> Result<FlowCertificate> {
    if !g.is_cubic() {
        return Err(Error::HypothesisViolated("graph is not cubic".into()));
    }
    let sg = SignedGraph::new(g.clone(), s.clone())?;
    if !sg.is_flow_admissible() {
        return Err(Error::HypothesisViolated(
            "signed graph is not flow-admissible".into(),
        ));
    }
    let edges = g.edge_count();
    let mut owner = vec![usize::MAX; edges];
    for (i, mi) in m.iter().enumerate() {
        for &e in mi.iter() {
            g.check_edge(e)?;
            if owner[e] != usize::MAX {
                return Err(Error::HypothesisViolated(
                    "matchings are not disjoint".into(),
                ));
            }
            owner[e] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::HypothesisViolated(
            "matchings do not cover every edge".into(),
        ));
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let union: Vec<EdgeId> = m[a].iter().chain(m[b].iter()).copied().collect();
        if !is_hamiltonian_circuit(g, &union) {
            return Err(Error::HypothesisViolated(
                "a union of two matchings is not a Hamiltonian circuit".into(),
            ));
        }
    }
    let parity = |i: usize| m[i].iter().filter(|&&e| s.is_negative(e)).count() % 2;
    let (a, b) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(a, b)| parity(a) == parity(b))
        .expect("two of three parities agree");
    let c = 3 - a - b;
    let (m1, m2, m3) = (m[a], m[b], m[c]);
    let in_c: Vec<bool> = (0..edges).map(|e| owner[e] == a || owner[e] == b).collect();
    let Balance::Balanced(at) = balance_where(g, s, |e| in_c[e]) else {
        return Err(Error::Internal(
            "circuit with an even number of negative edges is unbalanced".into(),
        ));
    };
    let s1 = switch(g, s, &at)?;
    let cycle: Vec<EdgeId> = m1.iter().chain(m2).copied().collect();
    let d: Vec<EdgeId> = m1.iter().chain(m3).copied().collect();
    let negative_in_m3 = m3.iter().filter(|&&e| s1.is_negative(e)).count();
    let cert = if negative_in_m3 % 2 == 0 {
        eulerian_union_four_flow(g, &s1, &cycle, &d)?
    } else {
        odd_kotzig(g, &s1, &in_c, &d, &cycle)?
    };
    let back = transport_flow(&cert, &at)?;
    back.verify()
        .map_err(|v| Error::Internal(format!("transported flow fails verification: {v}")))?;
    Ok(back)
}

fn odd_kotzig(
    g: &Multigraph,
    s1: &Signature,
    in_c: &[bool],
    d: &[EdgeId],
    cycle: &[EdgeId],
) -> Result<FlowCertificate> {
    let e = (0..g.edge_count())
        .find(|&e| s1.is_negative(e))
        .ok_or_else(|| Error::Internal("no negative edge".into()))?;
    let star = s1.with_flipped(e);
    let phi = eulerian_union_four_flow(g, &star, d, cycle)?.flow;
    let mut orientation = phi.orientation.clone();
    let mut values = phi.values.clone();
    let pair = orientation.pair(e);
    let x = if pair[0] == 1 {
        g.edge(e).u
    } else {
        g.edge(e).v
    };
    orientation.flip_half_edge(half_at(g, e, x));
    let f = (0..g.edge_count())
        .find(|&f| orientation.is_introverted(f))
        .ok_or_else(|| Error::Internal("no introverted edge to absorb the excess".into()))?;
    let fe = g.edge(f);
    // walk the directed circuit from x
    let mut path = Vec::new();
    let mut at = x;
    let (u, w) = loop {
        if at == fe.u {
            break (fe.u, fe.v);
        }
        if at == fe.v {
            break (fe.v, fe.u);
        }
        let next = out_edge(g, &orientation, in_c, at)?;
        path.push(next);
        at = g.opposite(next, at);
    };
    for &p in &path {
        values[p] = values[p] + 2;
    }
    at = u;
    while at != w {
        let next = out_edge(g, &orientation, in_c, at)?;
        values[next] = values[next] + 1;
        at = g.opposite(next, at);
    }
    values[f] = Fraction::integer(2);
    let sg = SignedGraph::new(g.clone(), s1.clone())?;
    certified(
        &sg,
        Flow {
            orientation,
            values,
        },
        FlowKind::Integer { k: 6 },
    )
}

fn out_edge(g: &Multigraph, o: &Orientation, in_c: &[bool], v: VertexId) -> Result<EdgeId> {
    g.half_edges(v)
        .iter()
        .find(|h| in_c[h.edge] && o.tau(**h) == 1)
        .map(|h| h.edge)
        .ok_or_else(|| Error::Internal("circuit is not directed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{g_n, k_n, k_nn, petersen};
    use crate::structure::kotzig_check;

    #[test]
    fn bipartite_examples() {
        for g in [k_nn(3).unwrap(), g_n(2).unwrap(), g_n(3).unwrap()] {
            let out = bipartite_four_flow(&g).unwrap();
            assert_eq!(out.signature.negative_count(), 2);
            assert!(out.certificate.is_valid());
        }
    }

    #[test]
    fn petersen_oddness_flow() {
        let out = oddness_four_flow(&petersen()).unwrap();
        assert_eq!(out.signature.negative_count(), 2);
        assert!(out.certificate.is_valid());
        assert!(oddness_four_flow(&k_n(4).unwrap()).is_err());
    }

    #[test]
    fn k4_kotzig_every_signature() {
        let g = k_n(4).unwrap();
        let [m1, m2, m3] = kotzig_check(&g, 1000).unwrap().unwrap();
        for bits in 0u32..64 {
            let s = Signature::from_negative_set(6, (0..6).filter(|i| bits >> i & 1 == 1)).unwrap();
            let sg = SignedGraph::new(g.clone(), s.clone()).unwrap();
            let out = kotzig_six_flow(&g, &s, [&m1, &m2, &m3]);
            if sg.is_flow_admissible() {
                let cert = out.unwrap();
                assert!(cert.is_valid());
                assert_eq!(cert.signature, s);
            } else {
                assert!(out.is_err());
            }
        }
    }
}
