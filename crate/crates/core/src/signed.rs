//! Signatures, switching, balance and flow-admissibility.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// A sign for every edge of a companion multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    signs: Vec<Sign>,
}

impl Signature {
    pub fn all_positive(edge_count: usize) -> Self {
        Signature {
            signs: vec![Sign::Positive; edge_count],
        }
    }

    pub fn all_negative(edge_count: usize) -> Self {
        Signature {
            signs: vec![Sign::Negative; edge_count],
        }
    }

    pub fn from_signs(signs: Vec<Sign>) -> Self {
        Signature { signs }
    }

    /// Signature on `edge_count` edges whose negative set is `negative`.
    pub fn from_negative_set(
        edge_count: usize,
        negative: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let mut s = Signature::all_positive(edge_count);
        for e in negative {
            if e >= edge_count {
                return Err(Error::EdgeOutOfRange {
                    edge: e,
                    count: edge_count,
                });
            }
            s.signs[e] = Sign::Negative;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs[e]
    }

    pub fn is_negative(&self, e: EdgeId) -> bool {
        self.signs[e] == Sign::Negative
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn negative_set(&self) -> Vec<EdgeId> {
        (0..self.signs.len())
            .filter(|&e| self.is_negative(e))
            .collect()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }

    pub fn flip(&mut self, e: EdgeId) {
        self.signs[e] = self.signs[e].flipped();
    }

    pub fn with_flipped(&self, e: EdgeId) -> Signature {
        let mut s = self.clone();
        s.flip(e);
        s
    }

    /// The edgewise product of two signatures.
    pub fn product(&self, other: &Signature) -> Signature {
        Signature {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a.times(*b))
                .collect(),
        }
    }
}

/// A set of vertices to switch at.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchSet {
    vertices: BTreeSet<VertexId>,
}

impl SwitchSet {
    pub fn new() -> Self {
        SwitchSet::default()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn insert(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub(crate) fn mask(&self, vertex_count: usize) -> Vec<bool> {
        let mut m = vec![false; vertex_count];
        for v in self.iter() {
            m[v] = true;
        }
        m
    }
}

impl FromIterator<VertexId> for SwitchSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        SwitchSet {
            vertices: iter.into_iter().collect(),
        }
    }
}

/// A multigraph together with a signature on its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    graph: Multigraph,
    signature: Signature,
}

impl SignedGraph {
    pub fn new(graph: Multigraph, signature: Signature) -> Result<Self> {
        check_signature(&graph, &signature)?;
        Ok(SignedGraph { graph, signature })
    }

    pub fn unsigned(graph: Multigraph) -> Self {
        let signature = Signature::all_positive(graph.edge_count());
        SignedGraph { graph, signature }
    }

    pub fn with_negative_set(
        graph: Multigraph,
        negative: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let signature = Signature::from_negative_set(graph.edge_count(), negative)?;
        Ok(SignedGraph { graph, signature })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn with_signature(&self, signature: Signature) -> Result<SignedGraph> {
        SignedGraph::new(self.graph.clone(), signature)
    }

    pub fn into_parts(self) -> (Multigraph, Signature) {
        (self.graph, self.signature)
    }

    pub fn switched(&self, at: &SwitchSet) -> Result<SignedGraph> {
        Ok(SignedGraph {
            graph: self.graph.clone(),
            signature: switch(&self.graph, &self.signature, at)?,
        })
    }

    pub fn is_balanced(&self) -> bool {
        is_balanced(&self.graph, &self.signature)
    }

    pub fn admissibility(&self) -> Admissibility {
        is_flow_admissible(&self.graph, &self.signature)
    }

    pub fn is_flow_admissible(&self) -> bool {
        self.admissibility().is_admissible()
    }
}

pub(crate) fn check_signature(g: &Multigraph, s: &Signature) -> Result<()> {
    if s.len() != g.edge_count() {
        return Err(Error::SignatureLength {
            expected: g.edge_count(),
            found: s.len(),
        });
    }
    Ok(())
}

/// Flip the sign of every edge with exactly one endpoint in `at`.
pub fn switch(g: &Multigraph, s: &Signature, at: &SwitchSet) -> Result<Signature> {
    check_signature(g, s)?;
    for v in at.iter() {
        g.check_vertex(v)?;
    }
    let mask = at.mask(g.vertex_count());
    let mut out = s.clone();
    for (id, e) in g.edges().iter().enumerate() {
        if mask[e.u] != mask[e.v] {
            out.flip(id);
        }
    }
    Ok(out)
}

/// Outcome of a balance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// Switching at the given set makes every edge positive.
    Balanced(SwitchSet),
    /// A circuit (edge ids in traversal order) with an odd number of negative edges.
    Unbalanced { circuit: Vec<EdgeId> },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

/// Balance test by sign propagation along a BFS spanning forest.
///
/// The witness is the fundamental circuit of the lowest-id non-tree edge that is inconsistent with the propagated potentials.
pub fn balance(g: &Multigraph, s: &Signature) -> Balance {
    balance_where(g, s, |_| true)
}

pub(crate) fn balance_where(
    g: &Multigraph,
    s: &Signature,
    keep: impl Fn(EdgeId) -> bool,
) -> Balance {
    let n = g.vertex_count();
    let mut potential = vec![0i8; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut tree = vec![false; g.edge_count()];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if potential[root] != 0 {
            continue;
        }
        potential[root] = 1;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for h in g.half_edges(x) {
                if !keep(h.edge) {
                    continue;
                }
                let y = g.opposite(h.edge, x);
                if potential[y] == 0 {
                    potential[y] = potential[x] * s.sign(h.edge).value() as i8;
                    parent_edge[y] = h.edge;
                    depth[y] = depth[x] + 1;
                    tree[h.edge] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    for (id, e) in g.edges().iter().enumerate() {
        if tree[id] || !keep(id) {
            continue;
        }
        if potential[e.u] * potential[e.v] * s.sign(id).value() as i8 == -1 {
            return Balance::Unbalanced {
                circuit: fundamental_circuit(g, id, &parent_edge, &depth),
            };
        }
    }
    Balance::Balanced((0..n).filter(|&v| potential[v] == -1).collect())
}

/// Edge `e` followed by the tree path from its `v` end back to its `u` end.
fn fundamental_circuit(
    g: &Multigraph,
    e: EdgeId,
    parent_edge: &[EdgeId],
    depth: &[usize],
) -> Vec<EdgeId> {
    let (mut a, mut b) = (g.edge(e).v, g.edge(e).u);
    let mut from_a = Vec::new();
    let mut from_b = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            from_a.push(parent_edge[a]);
            a = g.opposite(parent_edge[a], a);
        } else {
            from_b.push(parent_edge[b]);
            b = g.opposite(parent_edge[b], b);
        }
    }
    let mut circuit = vec![e];
    circuit.extend(from_a);
    circuit.extend(from_b.into_iter().rev());
    circuit
}

pub fn is_balanced(g: &Multigraph, s: &Signature) -> bool {
    balance(g, s).is_balanced()
}

/// A switch set turning `s1` into `s2`, if the two signatures are equivalent.
pub fn equivalent(g: &Multigraph, s1: &Signature, s2: &Signature) -> Option<SwitchSet> {
    match balance(g, &s1.product(s2)) {
        Balance::Balanced(at) => Some(at),
        Balance::Unbalanced { .. } => None,
    }
}

pub const DEFAULT_SWITCH_VERTEX_CAP: usize = 24;

/// An equivalent signature with the fewest negative edges, by exhaustive search over switch sets.
///
/// Ties go to the lexicographically smallest negative set. Vertex 0 is never switched, since switching
/// at a set and at its complement give the same signature.
pub fn frustration_minimal(
    g: &Multigraph,
    s: &Signature,
    vertex_cap: usize,
) -> Result<(Signature, SwitchSet)> {
    check_signature(g, s)?;
    let n = g.vertex_count();
    if n > vertex_cap {
        return Err(Error::CapExceeded {
            what: "vertex count for exhaustive switching",
            value: n,
            cap: vertex_cap,
        });
    }
    if n <= 1 {
        return Ok((s.clone(), SwitchSet::new()));
    }
    let words = g.edge_count().div_ceil(64).max(1);
    let mut cut = vec![vec![0u64; words]; n];
    for (id, e) in g.edges().iter().enumerate() {
        cut[e.u][id / 64] ^= 1 << (id % 64);
        cut[e.v][id / 64] ^= 1 << (id % 64);
    }
    let mut current = vec![0u64; words];
    for e in s.negative_set() {
        current[e / 64] |= 1 << (e % 64);
    }
    let mut best = current.clone();
    let mut best_code = 0u64;
    let count = |m: &[u64]| m.iter().map(|w| w.count_ones()).sum::<u32>();
    let mut best_count = count(&best);
    for i in 1u64..(1u64 << (n - 1)) {
        let flip = 1 + i.trailing_zeros() as usize;
        for (c, x) in current.iter_mut().zip(&cut[flip]) {
            *c ^= x;
        }
        let k = count(&current);
        if k < best_count || (k == best_count && lex_less(&current, &best)) {
            best.clone_from(&current);
            best_count = k;
            best_code = i ^ (i >> 1);
        }
    }
    let at: SwitchSet = (0..n - 1)
        .filter(|b| best_code >> b & 1 == 1)
        .map(|b| b + 1)
        .collect();
    Ok((switch(g, s, &at)?, at))
}

/// Whether the sorted id list of `a` precedes that of `b`, for sets of equal size.
fn lex_less(a: &[u64], b: &[u64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        let d = x ^ y;
        if d != 0 {
            return x & (d & d.wrapping_neg()) != 0;
        }
    }
    false
}

/// Cut edges, in increasing id order. Parallel edges are never bridges.
pub fn bridges(g: &Multigraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // frames: (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(VertexId, EdgeId, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(frame) = stack.last_mut() {
            let (x, via, idx) = *frame;
            if idx < g.degree(x) {
                frame.2 += 1;
                let h = g.half_edges(x)[idx];
                if h.edge == via {
                    continue;
                }
                let y = g.opposite(h.edge, x);
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, h.edge, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Why a signed graph admits no nowhere-zero flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Inadmissibility {
    /// The graph has no edges at all.
    NoEdges,
    /// Flipping `edge` balances its component: the signature is equivalent to one with a single negative edge.
    SingleNegativeEdge { edge: EdgeId },
    /// Removing `bridge` leaves a balanced component.
    BalancedBridgeSide { bridge: EdgeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    NotAdmissible(Inadmissibility),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Bouchet's criterion, applied to every component that has edges. Bridge sides are examined
/// before single-edge flips, so a bridge with a balanced side reports that reason.
pub fn is_flow_admissible(g: &Multigraph, s: &Signature) -> Admissibility {
    if g.edge_count() == 0 {
        return Admissibility::NotAdmissible(Inadmissibility::NoEdges);
    }
    let (label, count) = g.components();
    let bridge_list = bridges(g);
    for comp in 0..count {
        let in_comp = |e: EdgeId| label[g.edge(e).u] == comp;
        let comp_edges: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| in_comp(e)).collect();
        if comp_edges.is_empty() {
            continue;
        }
        for &b in bridge_list.iter().filter(|&&b| in_comp(b)) {
            let (side, _) = g.components_where(|e| e != b);
            let ends = g.edge(b);
            for end in [ends.u, ends.v] {
                let on_side = |e: EdgeId| e != b && side[g.edge(e).u] == side[end];
                if balance_where(g, s, on_side).is_balanced() {
                    return Admissibility::NotAdmissible(Inadmissibility::BalancedBridgeSide {
                        bridge: b,
                    });
                }
            }
        }
        let mut flipped = s.clone();
        for &e in &comp_edges {
            flipped.flip(e);
            if balance_where(g, &flipped, in_comp).is_balanced() {
                return Admissibility::NotAdmissible(Inadmissibility::SingleNegativeEdge {
                    edge: e,
                });
            }
            flipped.flip(e);
        }
    }
    Admissibility::Admissible
}
