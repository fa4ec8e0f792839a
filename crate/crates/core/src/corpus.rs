//! Test corpora: all small connected cubic multigraphs and a list of named signed graphs.

use std::collections::HashMap;

use crate::constructions::{g_n, h_t, k2_3, k_n, k_nn, k_prime_nn, petersen};
use crate::error::Result;
use crate::graph::Multigraph;
use crate::signed::{Signature, SignedGraph};

/// Connected loopless cubic multigraphs on `n` vertices, one per isomorphism class, in a fixed order.
///
/// Edge multiplicities are enumerated over vertex pairs in row-major order and each new graph is
/// tested for isomorphism against the earlier ones with the same invariant.
pub fn cubic_multigraphs(n: usize) -> Vec<Multigraph> {
    if n % 2 == 1 || n == 0 {
        return Vec::new();
    }
    let mut mult = vec![vec![0u8; n]; n];
    let mut rem = vec![3u8; n];
    let mut found: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    fill(n, 0, 1, &mut mult, &mut rem, &mut found, &mut buckets);
    found
        .into_iter()
        .map(|m| {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for _ in 0..m[i][j] {
                        edges.push((i, j));
                    }
                }
            }
            Multigraph::new(n, edges).expect("valid")
        })
        .collect()
}

fn fill(
    n: usize,
    i: usize,
    j: usize,
    mult: &mut Vec<Vec<u8>>,
    rem: &mut Vec<u8>,
    found: &mut Vec<Vec<Vec<u8>>>,
    buckets: &mut HashMap<Vec<u32>, Vec<usize>>,
) {
    if i == n - 1 {
        if rem[n - 1] == 0 && connected(mult) {
            let key = invariant(mult);
            let bucket = buckets.entry(key).or_default();
            if !bucket.iter().any(|&k| isomorphic(&found[k], mult)) {
                bucket.push(found.len());
                found.push(mult.clone());
            }
        }
        return;
    }
    if j == n {
        if rem[i] == 0 {
            fill(n, i + 1, i + 2, mult, rem, found, buckets);
        }
        return;
    }
    let top = rem[i].min(rem[j]);
    for k in (0..=top).rev() {
        mult[i][j] = k;
        mult[j][i] = k;
        rem[i] -= k;
        rem[j] -= k;
        fill(n, i, j + 1, mult, rem, found, buckets);
        rem[i] += k;
        rem[j] += k;
    }
    mult[i][j] = 0;
    mult[j][i] = 0;
}

fn connected(mult: &[Vec<u8>]) -> bool {
    let n = mult.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if mult[x][y] > 0 && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Sorted per-vertex profiles: multiplicity pattern and number of triangles through the vertex.
fn invariant(mult: &[Vec<u8>]) -> Vec<u32> {
    let n = mult.len();
    let mut profile: Vec<u32> = (0..n)
        .map(|v| {
            let mut ms: Vec<u8> = mult[v].iter().copied().filter(|&m| m > 0).collect();
            ms.sort_unstable();
            let pattern = ms.iter().fold(0u32, |a, &m| a * 4 + m as u32);
            let mut triangles = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if mult[v][a] > 0 && mult[v][b] > 0 && mult[a][b] > 0 {
                        triangles += 1;
                    }
                }
            }
            pattern * 64 + triangles
        })
        .collect();
    profile.sort_unstable();
    profile
}

fn isomorphic(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, 0, &mut map, &mut used)
}

fn extend(a: &[Vec<u8>], b: &[Vec<u8>], v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.len();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] {
            continue;
        }
        if (0..v).all(|x| a[v][x] == b[w][map[x]]) {
            map[v] = w;
            used[w] = true;
            if extend(a, b, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
    }
    map[v] = usize::MAX;
    false
}

/// All connected cubic multigraphs with at most `max_vertices` vertices, smallest first.
pub fn cubic_corpus(max_vertices: usize) -> Vec<Multigraph> {
    (2..=max_vertices)
        .step_by(2)
        .flat_map(cubic_multigraphs)
        .collect()
}

/// A named signed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: SignedGraph,
}

fn entry(name: impl Into<String>, g: &Multigraph, negative: &[usize]) -> Result<CorpusEntry> {
    Ok(CorpusEntry {
        name: name.into(),
        graph: SignedGraph::new(
            g.clone(),
            Signature::from_negative_set(g.edge_count(), negative.iter().copied())?,
        )?,
    })
}

/// Petersen graph with edge `(0,1)` replaced by a path through a digon: not 3-edge-colorable,
/// bridgeless, 12 vertices.
pub fn petersen_with_digon() -> Multigraph {
    let p = petersen();
    let mut g = Multigraph::empty(12);
    for (e, edge) in p.edges().iter().enumerate() {
        if e == 0 {
            g.add_edge(edge.u, 10).expect("valid");
        } else {
            g.add_edge(edge.u, edge.v).expect("valid");
        }
    }
    g.add_edge(10, 11).expect("valid");
    g.add_edge(10, 11).expect("valid");
    g.add_edge(11, 1).expect("valid");
    g
}

/// Petersen graph with vertex 0 replaced by a triangle: a 12-vertex snark.
pub fn petersen_with_triangle() -> Multigraph {
    let p = petersen();
    let mut g = Multigraph::empty(12);
    // vertex 0 has neighbors 1, 4, 5; they attach to 0, 10, 11
    let mut slot = [0usize, 10, 11].into_iter();
    for edge in p.edges() {
        if edge.u == 0 || edge.v == 0 {
            let other = if edge.u == 0 { edge.v } else { edge.u };
            g.add_edge(slot.next().expect("three neighbors"), other)
                .expect("valid");
        } else {
            g.add_edge(edge.u, edge.v).expect("valid");
        }
    }
    g.add_edge(0, 10).expect("valid");
    g.add_edge(10, 11).expect("valid");
    g.add_edge(11, 0).expect("valid");
    g
}

/// A hub joined by bridges to blocks of odd order; `blocks[i]` is `false` for a triangle with a
/// doubled edge (3 vertices) and `true` for `K_4` with one edge subdivided (5 vertices). No 1-factor.
pub fn bridged_cubic(blocks: &[bool]) -> Multigraph {
    let mut g = Multigraph::empty(1);
    for &big in blocks {
        let x = g.add_vertex();
        g.add_edge(0, x).expect("valid");
        if big {
            let k: Vec<usize> = (0..4).map(|_| g.add_vertex()).collect();
            g.add_edge(x, k[0]).expect("valid");
            g.add_edge(x, k[1]).expect("valid");
            for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                g.add_edge(k[a], k[b]).expect("valid");
            }
        } else {
            let a = g.add_vertex();
            let b = g.add_vertex();
            g.add_edge(x, a).expect("valid");
            g.add_edge(x, b).expect("valid");
            g.add_edge(a, b).expect("valid");
            g.add_edge(a, b).expect("valid");
        }
    }
    g
}

/// Triangular prism: two triangles `0 1 2` and `3 4 5` joined by `i -- i+3`.
pub fn prism() -> Multigraph {
    Multigraph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .expect("valid")
}

/// The 3-cube with vertices as 3-bit strings.
pub fn cube() -> Multigraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Multigraph::new(8, edges).expect("valid")
}

/// About fifty named signed graphs covering the families, small cubic graphs and some non-cubic ones.
pub fn named_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let k23 = k2_3();
    out.push(entry("K2_3", &k23, &[])?);
    out.push(entry("K2_3 one negative", &k23, &[2])?);
    out.push(entry("K2_3 two negative", &k23, &[0, 1])?);
    let k4 = k_n(4)?;
    for (name, neg) in [
        ("K4", &[][..]),
        ("K4 one negative", &[0][..]),
        ("K4 matching negative", &[0, 5][..]),
        ("K4 path negative", &[0, 3][..]),
        ("K4 triangle negative", &[0, 1, 3][..]),
        ("K4 all negative", &[0, 1, 2, 3, 4, 5][..]),
    ] {
        out.push(entry(name, &k4, neg)?);
    }
    let p = petersen();
    for (name, neg) in [
        ("Petersen", &[][..]),
        ("Petersen two negative", &[0, 12][..]),
        ("Petersen three negative", &[0, 7, 12][..]),
        ("Petersen outer negative", &[0, 1, 2, 3, 4][..]),
        ("Petersen one negative", &[0][..]),
    ] {
        out.push(entry(name, &p, neg)?);
    }
    for t in 1..=3 {
        let sg = h_t(t)?;
        out.push(CorpusEntry {
            name: format!("H_{t}"),
            graph: sg,
        });
    }
    for n in 2..=4 {
        let g = g_n(n)?;
        out.push(entry(format!("G_{n}"), &g, &[])?);
        out.push(entry(format!("G_{n} even"), &g, &[0, 3])?);
        let odd: Vec<usize> = (0..n).map(|i| 3 * i).collect();
        if n % 2 == 1 {
            out.push(entry(format!("G_{n} odd"), &g, &odd)?);
        } else {
            out.push(entry(format!("G_{n} odd"), &g, &odd[..n - 1])?);
        }
    }
    let k33 = k_nn(3)?;
    out.push(entry("K3_3", &k33, &[])?);
    out.push(entry("K3_3 two negative", &k33, &[0, 4])?);
    out.push(entry("K3_3 three negative", &k33, &[0, 4, 8])?);
    let pr = prism();
    out.push(entry("prism", &pr, &[])?);
    out.push(entry("prism triangle negative", &pr, &[0])?);
    out.push(entry("prism both triangles negative", &pr, &[0, 3])?);
    let cu = cube();
    out.push(entry("cube", &cu, &[])?);
    out.push(entry("cube two negative", &cu, &[0, 11])?);
    let k5 = k_n(5)?;
    out.push(entry("K5", &k5, &[])?);
    out.push(entry("K5 one negative", &k5, &[0])?);
    out.push(entry("K5 triangle negative", &k5, &[0, 1, 4])?);
    let k6 = k_n(6)?;
    out.push(entry("K6", &k6, &[])?);
    out.push(entry("K6 all negative", &k6, &(0..15).collect::<Vec<_>>())?);
    let kp = k_prime_nn(3)?;
    out.push(entry("Kprime3_3", &kp, &[])?);
    let pd = petersen_with_digon();
    out.push(entry("Petersen with digon", &pd, &[])?);
    let pt = petersen_with_triangle();
    out.push(entry("Petersen with triangle", &pt, &[])?);
    let b0 = bridged_cubic(&[false, false, false]);
    out.push(entry("bridged digon blocks", &b0, &[3, 7, 11])?);
    let b1 = bridged_cubic(&[false, false, true]);
    out.push(entry("bridged mixed blocks", &b1, &[3, 7])?);
    let triangle = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)])?;
    out.push(entry("triangle", &triangle, &[])?);
    out.push(entry("unbalanced triangle", &triangle, &[0])?);
    let two_triangles = Multigraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])?;
    out.push(entry("bowtie both unbalanced", &two_triangles, &[1, 4])?);
    out.push(entry("bowtie one unbalanced", &two_triangles, &[1])?);
    let barbell = Multigraph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])?;
    out.push(entry("barbell unbalanced", &barbell, &[0, 4])?);
    out.push(entry("barbell balanced", &barbell, &[])?);
    let c4 = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)])?;
    out.push(entry("square", &c4, &[])?);
    out.push(entry("square two negative", &c4, &[0, 2])?);
    let path = Multigraph::new(3, [(0, 1), (1, 2)])?;
    out.push(entry("path", &path, &[])?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = [2, 4, 6]
            .iter()
            .map(|&n| cubic_multigraphs(n).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 6]);
    }

    #[test]
    fn named_graphs_are_what_they_claim() {
        assert!(petersen_with_digon().is_cubic());
        assert!(petersen_with_triangle().is_cubic());
        assert!(bridged_cubic(&[false, true, true]).is_cubic());
        assert!(cube().is_bipartite() && prism().is_cubic());
        let corpus = named_corpus().unwrap();
        assert!(corpus.len() >= 45);
        let mut names: Vec<&str> = corpus.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), corpus.len());
    }
}
