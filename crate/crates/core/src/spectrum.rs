//! Switching classes, flow spectra, X-spectra and r-minimal sets.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::flow::{
    circular_flow_number, circular_flow_number_exact, degree_lower_bound, exists_circular_flow,
    integer_flow_number, transport_flow, CircularOptions, Completeness, ExactOptions,
    FlowCertificate, SearchLimits,
};
use crate::fraction::Fraction;
use crate::graph::{EdgeId, Multigraph};
use crate::signed::{
    equivalent, frustration_minimal, Signature, SignedGraph, SwitchSet, DEFAULT_SWITCH_VERTEX_CAP,
};

pub const DEFAULT_CLASS_CAP: usize = 16;
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 20;
/// Graphs up to this size get circular values from the orientation oracle inside the lab.
pub const DEFAULT_LAB_EXACT_EDGE_CAP: usize = 18;

/// The switching classes of a multigraph, indexed by the signs left on co-tree edges after
/// switching every spanning-forest edge positive.
#[derive(Clone, Debug)]
pub struct SignatureClasses {
    graph: Multigraph,
    /// Parent edge of each vertex in a BFS spanning forest (`None` at roots), in BFS order.
    bfs: Vec<(usize, Option<EdgeId>)>,
    cotree: Vec<EdgeId>,
    switch_vertex_cap: usize,
}

/// One switching class with a representative signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureClass {
    pub index: u64,
    pub signature: Signature,
}

impl SignatureClasses {
    pub fn new(g: &Multigraph, class_cap: usize) -> Result<Self> {
        let rank = g.cycle_rank();
        if rank > class_cap {
            return Err(Error::CapExceeded {
                what: "cycle rank for class enumeration",
                value: rank,
                cap: class_cap,
            });
        }
        let mut bfs = Vec::with_capacity(g.vertex_count());
        let mut seen = vec![false; g.vertex_count()];
        let mut tree = vec![false; g.edge_count()];
        for root in 0..g.vertex_count() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            bfs.push((root, None));
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for h in g.half_edges(x) {
                    let y = g.opposite(h.edge, x);
                    if !seen[y] {
                        seen[y] = true;
                        tree[h.edge] = true;
                        bfs.push((y, Some(h.edge)));
                        queue.push_back(y);
                    }
                }
            }
        }
        let cotree = (0..g.edge_count()).filter(|&e| !tree[e]).collect();
        Ok(SignatureClasses {
            graph: g.clone(),
            bfs,
            cotree,
            switch_vertex_cap: DEFAULT_SWITCH_VERTEX_CAP,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn count(&self) -> u64 {
        1u64 << self.cotree.len()
    }

    /// The signature with negative set `{cotree[j] : bit j of index}`.
    pub fn cotree_signature(&self, index: u64) -> Signature {
        Signature::from_negative_set(
            self.graph.edge_count(),
            self.cotree
                .iter()
                .enumerate()
                .filter(|(j, _)| index >> j & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("co-tree edges are in range")
    }

    /// Class index of an arbitrary signature.
    pub fn index_of(&self, s: &Signature) -> u64 {
        let g = &self.graph;
        let mut potential = vec![1i64; g.vertex_count()];
        for &(v, parent) in &self.bfs {
            if let Some(e) = parent {
                potential[v] = potential[g.opposite(e, v)] * s.sign(e).value();
            }
        }
        let mut index = 0u64;
        for (j, &e) in self.cotree.iter().enumerate() {
            let edge = g.edge(e);
            if potential[edge.u] * potential[edge.v] * s.sign(e).value() == -1 {
                index |= 1 << j;
            }
        }
        index
    }

    /// Representative of a class: a fewest-negative-edges member when the graph is small enough
    /// for exhaustive switching, else the co-tree signature.
    pub fn representative(&self, index: u64) -> Signature {
        let s = self.cotree_signature(index);
        match frustration_minimal(&self.graph, &s, self.switch_vertex_cap) {
            Ok((m, _)) => m,
            Err(_) => s,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SignatureClass> + '_ {
        (0..self.count()).map(|index| SignatureClass {
            index,
            signature: self.representative(index),
        })
    }
}

/// Iterates over one representative per switching class, in class-index order.
pub fn signature_classes(g: &Multigraph, class_cap: usize) -> Result<SignatureClasses> {
    SignatureClasses::new(g, class_cap)
}

/// Which flow number a spectrum is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Circular,
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: Fraction,
    pub signature: Signature,
    pub certificate: FlowCertificate,
    /// For circular values: whether minimality is proven over all rationals.
    pub completeness: Option<Completeness>,
}

/// Attained flow numbers with one witness each, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub kind: SpectrumKind,
    pub entries: Vec<SpectrumEntry>,
    /// Signatures (classes, or subsets for X-spectra) examined.
    pub examined: usize,
    pub inadmissible: usize,
}

impl SpectrumReport {
    pub fn values(&self) -> Vec<Fraction> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// True when every circular value is proven minimal over all rationals.
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|e| {
            !matches!(
                e.completeness,
                Some(Completeness::UpperBound { .. } | Completeness::Discrepancy { .. })
            )
        })
    }
}

#[derive(Clone, Debug)]
struct ClassValue {
    representative: Signature,
    value: Option<(Fraction, FlowCertificate, Option<Completeness>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabOptions {
    pub class_cap: usize,
    /// Graphs with at most this many edges get circular flow numbers from the orientation oracle.
    pub exact_edge_cap: usize,
    pub circular: CircularOptions,
    pub limits: SearchLimits,
    /// Largest number of subsets enumerated by X-spectra and minimality tests.
    pub subset_budget: u64,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions {
            class_cap: DEFAULT_CLASS_CAP,
            exact_edge_cap: DEFAULT_LAB_EXACT_EDGE_CAP,
            circular: CircularOptions {
                cross_check: false,
                ..CircularOptions::default()
            },
            limits: SearchLimits::default(),
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

/// Flow numbers of the switching classes of one graph, computed on demand and cached.
pub struct SpectrumLab {
    classes: SignatureClasses,
    opts: LabOptions,
    cache: HashMap<(SpectrumKind, u64), ClassValue>,
    /// Whether a class admits a circular `r`-flow, for classes whose value is not yet known.
    admits: HashMap<(u64, Fraction), bool>,
}

impl SpectrumLab {
    pub fn new(g: &Multigraph, opts: LabOptions) -> Result<Self> {
        Ok(SpectrumLab {
            classes: SignatureClasses::new(g, opts.class_cap)?,
            opts,
            cache: HashMap::new(),
            admits: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &Multigraph {
        self.classes.graph()
    }

    pub fn classes(&self) -> &SignatureClasses {
        &self.classes
    }

    fn class_value(&mut self, kind: SpectrumKind, index: u64) -> Result<&ClassValue> {
        if !self.cache.contains_key(&(kind, index)) {
            let representative = self.classes.representative(index);
            let sg = SignedGraph::new(self.graph().clone(), representative.clone())?;
            let value = match kind {
                SpectrumKind::Integer => integer_flow_number(&sg, self.opts.limits)?
                    .certificate()
                    .map(|c| match c.kind {
                        crate::flow::FlowKind::Integer { k } => {
                            (Fraction::integer(k as i64), c.clone(), None)
                        }
                        _ => unreachable!("integer search labels its certificates"),
                    }),
                SpectrumKind::Circular => {
                    let result = if self.graph().edge_count() <= self.opts.exact_edge_cap {
                        circular_flow_number_exact(
                            &sg,
                            ExactOptions {
                                edge_cap: self.opts.exact_edge_cap,
                                reverse: false,
                            },
                        )?
                    } else {
                        circular_flow_number(&sg, self.opts.circular)?
                    };
                    match (result.value(), result.certificate(), result.completeness()) {
                        (Some(v), Some(c), comp) => Some((v, c.clone(), comp)),
                        _ => None,
                    }
                }
            };
            self.cache.insert(
                (kind, index),
                ClassValue {
                    representative,
                    value,
                },
            );
        }
        Ok(&self.cache[&(kind, index)])
    }

    /// Flow number of `(G, s)` with a certificate on `s` itself; `None` means infinite.
    pub fn flow_number(
        &mut self,
        kind: SpectrumKind,
        s: &Signature,
    ) -> Result<Option<(Fraction, FlowCertificate)>> {
        let index = self.classes.index_of(s);
        let g = self.graph().clone();
        let cv = self.class_value(kind, index)?;
        let Some((value, cert, _)) = &cv.value else {
            return Ok(None);
        };
        let at = equivalent(&g, &cv.representative, s)
            .ok_or_else(|| Error::Internal("signature is not in its computed class".into()))?;
        Ok(Some((*value, transport_flow(cert, &at)?)))
    }

    /// Flow number only, without transporting a certificate.
    pub fn flow_value(&mut self, kind: SpectrumKind, s: &Signature) -> Result<Option<Fraction>> {
        let index = self.classes.index_of(s);
        Ok(self.class_value(kind, index)?.value.as_ref().map(|v| v.0))
    }

    /// Spectrum over all switching classes.
    pub fn spectrum(&mut self, kind: SpectrumKind) -> Result<SpectrumReport> {
        let mut best: BTreeMap<Fraction, SpectrumEntry> = BTreeMap::new();
        let mut inadmissible = 0;
        let count = self.classes.count();
        for index in 0..count {
            let cv = self.class_value(kind, index)?.clone();
            match cv.value {
                None => inadmissible += 1,
                Some((value, certificate, completeness)) => {
                    best.entry(value).or_insert(SpectrumEntry {
                        value,
                        signature: cv.representative,
                        certificate,
                        completeness,
                    });
                }
            }
        }
        Ok(SpectrumReport {
            kind,
            entries: best.into_values().collect(),
            examined: count as usize,
            inadmissible,
        })
    }

    fn check_subset_budget(&self, size: usize) -> Result<()> {
        if size >= 64 || (1u64 << size) > self.opts.subset_budget {
            return Err(Error::CapExceeded {
                what: "number of subsets",
                value: size,
                cap: self.opts.subset_budget.ilog2() as usize,
            });
        }
        Ok(())
    }

    /// Spectrum over signatures whose negative set lies in `x`, one per switching class.
    pub fn x_spectrum(&mut self, kind: SpectrumKind, x: &[EdgeId]) -> Result<SpectrumReport> {
        let x = normalized(self.graph(), x)?;
        self.check_subset_budget(x.len())?;
        let mut seen = HashMap::new();
        let mut best: BTreeMap<Fraction, SpectrumEntry> = BTreeMap::new();
        let mut inadmissible = 0;
        for mask in 0u64..(1u64 << x.len()) {
            let set: Vec<EdgeId> = subset(&x, mask);
            let s = Signature::from_negative_set(self.graph().edge_count(), set)?;
            let index = self.classes.index_of(&s);
            if seen.insert(index, ()).is_some() {
                continue;
            }
            match self.flow_number(kind, &s)? {
                None => inadmissible += 1,
                Some((value, certificate)) => {
                    let completeness = self.cache[&(kind, index)].value.as_ref().and_then(|v| v.2);
                    best.entry(value).or_insert(SpectrumEntry {
                        value,
                        signature: s,
                        certificate,
                        completeness,
                    });
                }
            }
        }
        Ok(SpectrumReport {
            kind,
            entries: best.into_values().collect(),
            examined: seen.len(),
            inadmissible,
        })
    }

    /// Whether the negative set `set` has flow number exactly `r`.
    ///
    /// Circular values are decided from a single existence test when no `r`-flow exists or when `r`
    /// meets the degree lower bound; the full flow number is computed only otherwise.
    pub fn attains(&mut self, kind: SpectrumKind, set: &[EdgeId], r: Fraction) -> Result<bool> {
        let s = Signature::from_negative_set(self.graph().edge_count(), set.iter().copied())?;
        let index = self.classes.index_of(&s);
        if kind == SpectrumKind::Integer || self.cache.contains_key(&(kind, index)) {
            return Ok(self.class_value(kind, index)?.value.as_ref().map(|v| v.0) == Some(r));
        }
        if r < degree_lower_bound(self.graph()) {
            return Ok(false);
        }
        let admits = match self.admits.get(&(index, r)) {
            Some(&a) => a,
            None => {
                let sg =
                    SignedGraph::new(self.graph().clone(), self.classes.representative(index))?;
                let a = sg.is_flow_admissible()
                    && exists_circular_flow(&sg, r, self.opts.limits)?.is_some();
                self.admits.insert((index, r), a);
                a
            }
        };
        if !admits {
            return Ok(false);
        }
        if r == degree_lower_bound(self.graph()) {
            return Ok(true);
        }
        Ok(self.class_value(kind, index)?.value.as_ref().map(|v| v.0) == Some(r))
    }

    /// Whether `x` attains `r` as a negative set while no proper subset does.
    pub fn is_r_minimal(&mut self, kind: SpectrumKind, x: &[EdgeId], r: Fraction) -> Result<bool> {
        let x = normalized(self.graph(), x)?;
        self.check_subset_budget(x.len())?;
        if !self.attains(kind, &x, r)? {
            return Ok(false);
        }
        let full = (1u64 << x.len()) - 1;
        for mask in 0..full {
            if self.attains(kind, &subset(&x, mask), r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `r`-minimal sets with at most `size_cap` edges, by size and then lexicographically.
    pub fn r_minimal_sets(
        &mut self,
        kind: SpectrumKind,
        r: Fraction,
        size_cap: usize,
    ) -> Result<Vec<Vec<EdgeId>>> {
        let m = self.graph().edge_count();
        let mut out = Vec::new();
        for size in 0..=size_cap.min(m) {
            for set in combinations(m, size) {
                if self.is_r_minimal(kind, &set, r)? {
                    out.push(set);
                }
            }
        }
        Ok(out)
    }

    /// A smallest `r`-minimal set, lexicographically first among those of its size.
    pub fn smallest_r_minimal(
        &mut self,
        kind: SpectrumKind,
        r: Fraction,
    ) -> Result<Option<Vec<EdgeId>>> {
        let m = self.graph().edge_count();
        for size in 0..=m {
            for set in combinations(m, size) {
                if self.is_r_minimal(kind, &set, r)? {
                    return Ok(Some(set));
                }
            }
        }
        Ok(None)
    }
}

fn normalized(g: &Multigraph, x: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    for &e in &x {
        g.check_edge(e)?;
    }
    Ok(x)
}

fn subset(x: &[EdgeId], mask: u64) -> Vec<EdgeId> {
    x.iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Flow spectrum over all switching classes with default options.
pub fn flow_spectrum(g: &Multigraph) -> Result<SpectrumReport> {
    SpectrumLab::new(g, LabOptions::default())?.spectrum(SpectrumKind::Circular)
}

/// Integer flow spectrum over all switching classes with default options.
pub fn integer_flow_spectrum(g: &Multigraph) -> Result<SpectrumReport> {
    SpectrumLab::new(g, LabOptions::default())?.spectrum(SpectrumKind::Integer)
}

/// Switch set realizing `s` from the class representative (re-exported for report plumbing).
pub fn switch_to_representative(classes: &SignatureClasses, s: &Signature) -> Option<SwitchSet> {
    let rep = classes.representative(classes.index_of(s));
    equivalent(classes.graph(), s, &rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let c: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(
            c,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn class_counts() {
        let tree = Multigraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(signature_classes(&tree, 16).unwrap().count(), 1);
        let k23 = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let classes = signature_classes(&k23, 16).unwrap();
        assert_eq!(classes.count(), 4);
        let reps: Vec<usize> = classes
            .iter()
            .map(|c| c.signature.negative_count())
            .collect();
        assert_eq!(reps, vec![0, 1, 1, 1]);
    }

    #[test]
    fn index_is_switch_invariant() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let classes = signature_classes(&k4, 16).unwrap();
        for index in 0..classes.count() {
            let s = classes.cotree_signature(index);
            assert_eq!(classes.index_of(&s), index);
            let t = crate::signed::switch(&k4, &s, &[1, 3].into_iter().collect()).unwrap();
            assert_eq!(classes.index_of(&t), index);
            assert_eq!(classes.index_of(&classes.representative(index)), index);
        }
    }
}
