//! Loop-free multigraphs with dense vertex and edge ids.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

/// Which endpoint of an edge a half-edge sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    U,
    V,
}

impl End {
    pub fn index(self) -> usize {
        match self {
            End::U => 0,
            End::V => 1,
        }
    }

    pub fn other(self) -> End {
        match self {
            End::U => End::V,
            End::V => End::U,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: End,
}

/// A finite multigraph without loops. Parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl Multigraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut g = Multigraph::empty(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
            incidence: vec![Vec::new(); vertex_count],
        }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.incidence.push(Vec::new());
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = self.edges.len();
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(Error::Loop {
                edge: id,
                vertex: u,
            });
        }
        self.edges.push(Edge { u, v });
        self.incidence[u].push(HalfEdge {
            edge: id,
            end: End::U,
        });
        self.incidence[v].push(HalfEdge {
            edge: id,
            end: End::V,
        });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                edge: e,
                count: self.edges.len(),
            })
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }

    /// Half-edges at `v`, in edge-id order.
    pub fn half_edges(&self, v: VertexId) -> &[HalfEdge] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        let e = self.edges[h.edge];
        match h.end {
            End::U => e.u,
            End::V => e.v,
        }
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let Edge { u, v: w } = self.edges[e];
        if u == v {
            w
        } else {
            u
        }
    }

    /// Common degree of all vertices, if the graph is regular and nonempty.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(*self.vertices().first()?);
        self.vertices()
            .iter()
            .all(|&v| self.degree(v) == d)
            .then_some(d)
    }

    pub fn is_cubic(&self) -> bool {
        self.regular_degree() == Some(3)
    }

    fn vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count).collect()
    }

    /// Connected-component label of every vertex (labels in order of first vertex) and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_where(|_| true)
    }

    /// Components of the spanning subgraph formed by the edges accepted by `keep`.
    pub fn components_where(&self, keep: impl Fn(EdgeId) -> bool) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.vertex_count {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for h in &self.incidence[x] {
                    if !keep(h.edge) {
                        continue;
                    }
                    let y = self.opposite(h.edge, x);
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Dimension of the cycle space: |E| − |V| + c.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.components().1 - self.vertex_count
    }

    /// Whether the spanning subgraph without the edges in `removed` is bipartite.
    pub fn is_bipartite_without(&self, removed: &[bool]) -> bool {
        let mut side = vec![u8::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        for root in 0..self.vertex_count {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for h in &self.incidence[x] {
                    if removed.get(h.edge).copied().unwrap_or(false) {
                        continue;
                    }
                    let y = self.opposite(h.edge, x);
                    if side[y] == u8::MAX {
                        side[y] = side[x] ^ 1;
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_bipartite(&self) -> bool {
        self.is_bipartite_without(&[])
    }

    /// The spanning subgraph with exactly the edges flagged in `keep`, plus the original id of each new edge.
    pub fn spanning_subgraph(&self, keep: &[bool]) -> (Multigraph, Vec<EdgeId>) {
        let mut sub = Multigraph::empty(self.vertex_count);
        let mut origin = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep[id] {
                sub.add_edge(e.u, e.v).expect("edges of a valid graph");
                origin.push(id);
            }
        }
        (sub, origin)
    }

    /// Hex SHA-256 of the canonical text `v n` followed by one `e u v` line per edge.
    pub fn fingerprint(&self) -> String {
        let mut text = format!("v {}\n", self.vertex_count);
        for e in &self.edges {
            text.push_str(&format!("e {} {}\n", e.u, e.v));
        }
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
