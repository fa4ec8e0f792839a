//! Named graph families with deterministic vertex and edge layouts.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::signed::{Signature, SignedGraph};

/// `2t+1` triangles hanging off a common vertex by bridges.
///
/// Vertex 0 is the hub. Triangle `i` (0-based) has vertices `x = 1+3i` (joined to the hub),
/// `y = 2+3i`, `z = 3+3i`, and edges `4i = (0,x)`, `4i+1 = (x,y)`, `4i+2 = (y,z)`, `4i+3 = (z,x)`.
/// The signature makes each `yz` negative.
pub fn h_t(t: usize) -> Result<SignedGraph> {
    if t == 0 {
        return Err(Error::InvalidParameter("H_t needs t >= 1".into()));
    }
    let triangles = 2 * t + 1;
    let mut g = Multigraph::empty(1 + 3 * triangles);
    let mut negative = Vec::new();
    for i in 0..triangles {
        let (x, y, z) = (1 + 3 * i, 2 + 3 * i, 3 + 3 * i);
        g.add_edge(0, x)?;
        g.add_edge(x, y)?;
        negative.push(g.add_edge(y, z)?);
        g.add_edge(z, x)?;
    }
    SignedGraph::with_negative_set(g, negative)
}

/// Bridge and triangle edges of triangle `i` in [`h_t`]: `(bridge, [xy, yz, zx])`.
pub fn h_t_triangle(i: usize) -> (EdgeId, [EdgeId; 3]) {
    (4 * i, [4 * i + 1, 4 * i + 2, 4 * i + 3])
}

/// A circuit of length `2n` with every second edge doubled.
///
/// Edges `3i` and `3i+1` join `v_{2i}` and `v_{2i+1}`; edge `3i+2` joins `v_{2i+1}` and `v_{2i+2 mod 2n}`.
pub fn g_n(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("G_n needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i + 1, (2 * i + 2) % (2 * n)));
    }
    Multigraph::new(2 * n, edges)
}

pub fn k2_3() -> Multigraph {
    g_n(1).expect("n = 1 is valid")
}

/// Outer 5-circuit `0..5`, spokes `i -- i+5`, inner pentagram `5+i -- 5+(i+2)%5`.
pub fn petersen() -> Multigraph {
    let mut edges = Vec::with_capacity(15);
    edges.extend((0..5).map(|i| (i, (i + 1) % 5)));
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Multigraph::new(10, edges).expect("valid layout")
}

pub fn k_n(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("K_n needs n >= 2".into()));
    }
    Multigraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Sides `0..n` and `n..2n`, edges ordered by the first side then the second.
pub fn k_nn(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("K_{n,n} needs n >= 1".into()));
    }
    Multigraph::new(2 * n, (0..n).flat_map(|a| (0..n).map(move |b| (a, n + b))))
}

/// `K_{n,n}` with the edge `(0, n)` replaced by the path `0 -- 2n -- n`.
pub fn k_prime_nn(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("K'_{n,n} needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(n * n + 1);
    for a in 0..n {
        for b in 0..n {
            if a == 0 && b == 0 {
                edges.push((0, 2 * n));
                edges.push((2 * n, n));
            } else {
                edges.push((a, n + b));
            }
        }
    }
    Multigraph::new(2 * n + 1, edges)
}

/// Layout of the gadget graph `G_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtLayout {
    /// Number of vertices and edges of the core made of four doubled triangles.
    pub core_vertices: usize,
    pub core_edges: usize,
    /// The vertex joined to the other three triangles.
    pub y: usize,
    /// `(attachment vertex, first new vertex id, first new edge id)` per glued copy of `K'_{2t+1,2t+1}`.
    pub copies: Vec<(usize, usize, EdgeId)>,
}

/// A `(2t+1)`-regular graph without a 1-factor, for `t >= 2`.
///
/// The core has four triangles `j = 0..4` with vertices `a = 3j`, `b = 3j+1`, `c = 3j+2` and
/// edges `4j, 4j+1 = (a,b)`, `4j+2 = (b,c)`, `4j+3 = (c,a)`; `y = c_3` and edges `16+j = (c_j, y)`
/// for `j < 3`. Every core vertex other than `y`, in ascending order, receives `t-1` copies of
/// `K'_{2t+1,2t+1}` glued at their subdivision vertex, and `y` receives `t-2` copies. Each copy
/// keeps its own vertex and edge order with the subdivision vertex replaced by the attachment.
/// The signature makes all eight doubled edges negative.
pub fn g_t(t: usize) -> Result<(SignedGraph, GtLayout)> {
    if t < 2 {
        return Err(Error::InvalidParameter("G_t needs t >= 2".into()));
    }
    let mut g = Multigraph::empty(12);
    let mut negative = Vec::new();
    for j in 0..4 {
        let (a, b, c) = (3 * j, 3 * j + 1, 3 * j + 2);
        negative.push(g.add_edge(a, b)?);
        negative.push(g.add_edge(a, b)?);
        g.add_edge(b, c)?;
        g.add_edge(c, a)?;
    }
    let y = 11;
    for j in 0..3 {
        g.add_edge(3 * j + 2, y)?;
    }
    let core_edges = g.edge_count();
    let n = 2 * t + 1;
    let gadget = k_prime_nn(n)?;
    let mut copies = Vec::new();
    for z in 0..12 {
        let count = if z == y { t - 2 } else { t - 1 };
        for _ in 0..count {
            let first_vertex = g.vertex_count();
            let first_edge = g.edge_count();
            for _ in 0..2 * n {
                g.add_vertex();
            }
            let map = |w: usize| if w == 2 * n { z } else { first_vertex + w };
            for e in gadget.edges() {
                g.add_edge(map(e.u), map(e.v))?;
            }
            copies.push((z, first_vertex, first_edge));
        }
    }
    let layout = GtLayout {
        core_vertices: 12,
        core_edges,
        y,
        copies,
    };
    Ok((SignedGraph::with_negative_set(g, negative)?, layout))
}

/// A family name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Ht,
    Gn,
    Gt,
    K23,
    Petersen,
    KPrimeNN,
    Kn,
    Knn,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Ht,
        Family::Gn,
        Family::Gt,
        Family::K23,
        Family::Petersen,
        Family::KPrimeNN,
        Family::Kn,
        Family::Knn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ht => "H_t",
            Family::Gn => "G_n",
            Family::Gt => "G_t",
            Family::K23 => "K2_3",
            Family::Petersen => "Petersen",
            Family::KPrimeNN => "Kprime_nn",
            Family::Kn => "K_n",
            Family::Knn => "K_nn",
        }
    }

    pub fn takes_parameter(self) -> bool {
        !matches!(self, Family::K23 | Family::Petersen)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| {
                let name: String = f
                    .name()
                    .chars()
                    .filter(|c| c.is_ascii_alphanumeric())
                    .collect();
                name.to_ascii_lowercase() == key
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// A family with its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub param: usize,
}

impl FamilySpec {
    pub fn new(family: Family, param: usize) -> Self {
        FamilySpec { family, param }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.takes_parameter() {
            write!(f, "{}({})", self.family, self.param)
        } else {
            write!(f, "{}", self.family)
        }
    }
}

/// The graph of a family with its canonical signature: `H_t` and `G_t` carry their fixed
/// signatures, the rest are all-positive.
pub fn make_family(spec: FamilySpec) -> Result<SignedGraph> {
    let p = spec.param;
    Ok(match spec.family {
        Family::Ht => h_t(p)?,
        Family::Gt => g_t(p)?.0,
        Family::Gn => SignedGraph::unsigned(g_n(p)?),
        Family::K23 => SignedGraph::unsigned(k2_3()),
        Family::Petersen => SignedGraph::unsigned(petersen()),
        Family::KPrimeNN => SignedGraph::unsigned(k_prime_nn(p)?),
        Family::Kn => SignedGraph::unsigned(k_n(p)?),
        Family::Knn => SignedGraph::unsigned(k_nn(p)?),
    })
}

/// Signature with the given negative edges on a family graph.
pub fn with_negatives(g: &Multigraph, negative: &[EdgeId]) -> Result<Signature> {
    Signature::from_negative_set(g.edge_count(), negative.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_counts() {
        let sg = h_t(2).unwrap();
        assert_eq!(sg.graph().vertex_count(), 16);
        assert_eq!(sg.graph().edge_count(), 20);
        assert_eq!(crate::signed::bridges(sg.graph()).len(), 5);
        assert_eq!(sg.signature().negative_count(), 5);
    }

    #[test]
    fn g_n_shapes() {
        assert_eq!(g_n(1).unwrap().fingerprint(), k2_3().fingerprint());
        let g3 = g_n(3).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (6, 9));
        assert!(g3.is_bipartite() && g3.is_cubic());
    }

    #[test]
    fn g_t_is_regular() {
        let (sg, layout) = g_t(2).unwrap();
        assert_eq!(sg.graph().regular_degree(), Some(5));
        assert_eq!(layout.copies.len(), 11);
        assert_eq!(sg.signature().negative_count(), 8);
        let (sg, _) = g_t(3).unwrap();
        assert_eq!(sg.graph().regular_degree(), Some(7));
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("petersen".parse::<Family>().unwrap(), Family::Petersen);
        assert_eq!("Ht".parse::<Family>().unwrap(), Family::Ht);
        assert!("X".parse::<Family>().is_err());
        assert!(petersen().is_cubic());
        assert_eq!(k_prime_nn(3).unwrap().edge_count(), 10);
    }
}
