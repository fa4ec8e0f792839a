//! Orientations, flows, certificates and their exact verification.
//!
//! Orientation convention: `tau(h) = +1` means the half-edge `h` points out of its vertex.
//! Consistency with a signature requires `tau(h_u) * tau(h_v) = -sigma(e)`, so a positive edge
//! runs from one end to the other while a negative edge is either extroverted (both half-edges
//! incoming, `tau = -1`) or introverted (both outgoing).

mod exact;
mod lp;
mod number;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use exact::{circular_flow_number_exact, ExactOptions, DEFAULT_EXACT_EDGE_CAP};
pub use number::{
    circular_flow_number, degree_lower_bound, exists_circular_flow, exists_integer_nzflow,
    exists_modular_flow, exists_pq_flow, farey_candidates, integer_flow_number, CircularFlowNumber,
    CircularOptions, Completeness, IntegerFlowNumber, SearchLimits, INTEGER_FLOW_CAP,
};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{EdgeId, End, HalfEdge, Multigraph, VertexId};
use crate::signed::{Sign, Signature, SignedGraph, SwitchSet};

/// Direction of every half-edge: `[tau at u, tau at v]` per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    tau: Vec<[i8; 2]>,
}

impl Orientation {
    /// The orientation with every `u` half-edge outgoing.
    pub fn reference(s: &Signature) -> Self {
        Orientation {
            tau: s
                .signs()
                .iter()
                .map(|sign| [1, -sign.value() as i8])
                .collect(),
        }
    }

    pub fn from_pairs(tau: Vec<[i8; 2]>) -> Result<Self> {
        for (e, pair) in tau.iter().enumerate() {
            if pair.iter().any(|t| *t != 1 && *t != -1) {
                return Err(Error::InvalidParameter(format!(
                    "orientation entry of edge {e} is not +1/-1"
                )));
            }
        }
        Ok(Orientation { tau })
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau(&self, h: HalfEdge) -> i8 {
        self.tau[h.edge][h.end.index()]
    }

    pub fn pair(&self, e: EdgeId) -> [i8; 2] {
        self.tau[e]
    }

    pub fn pairs(&self) -> &[[i8; 2]] {
        &self.tau
    }

    pub fn set(&mut self, h: HalfEdge, value: i8) {
        self.tau[h.edge][h.end.index()] = value;
    }

    pub fn flip_half_edge(&mut self, h: HalfEdge) {
        self.tau[h.edge][h.end.index()] *= -1;
    }

    pub fn reverse_edge(&mut self, e: EdgeId) {
        self.tau[e][0] *= -1;
        self.tau[e][1] *= -1;
    }

    /// The signature this orientation is consistent with.
    pub fn implied_signature(&self) -> Signature {
        Signature::from_signs(
            self.tau
                .iter()
                .map(|[a, b]| {
                    if a * b == -1 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }
                })
                .collect(),
        )
    }

    pub fn check_consistent(&self, s: &Signature) -> Result<()> {
        if self.tau.len() != s.len() {
            return Err(Error::SignatureLength {
                expected: s.len(),
                found: self.tau.len(),
            });
        }
        for (e, [a, b]) in self.tau.iter().enumerate() {
            if (a * b) as i64 != -s.sign(e).value() {
                return Err(Error::InconsistentOrientation { edge: e });
            }
        }
        Ok(())
    }

    /// Negative edge with both half-edges incoming.
    pub fn is_extroverted(&self, e: EdgeId) -> bool {
        self.tau[e] == [-1, -1]
    }

    /// Negative edge with both half-edges outgoing.
    pub fn is_introverted(&self, e: EdgeId) -> bool {
        self.tau[e] == [1, 1]
    }
}

/// An orientation with a nonnegative exact value on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    pub orientation: Orientation,
    pub values: Vec<Fraction>,
}

impl Flow {
    pub fn zero(s: &Signature) -> Self {
        Flow {
            orientation: Orientation::reference(s),
            values: vec![Fraction::ZERO; s.len()],
        }
    }

    /// Builds a flow from signed values measured along the reference orientation.
    ///
    /// Negative values are normalized by reversing the edge. Zero values keep the reference direction.
    pub fn from_reference_values(s: &Signature, signed: &[Fraction]) -> Self {
        let mut orientation = Orientation::reference(s);
        let values = signed
            .iter()
            .enumerate()
            .map(|(e, &x)| {
                if x < 0 {
                    orientation.reverse_edge(e);
                }
                x.abs()
            })
            .collect();
        Flow {
            orientation,
            values,
        }
    }

    /// Signed values measured along the reference orientation (`u` half-edge outgoing).
    pub fn reference_values(&self) -> Vec<Fraction> {
        self.values
            .iter()
            .enumerate()
            .map(|(e, &x)| x * self.orientation.pair(e)[0] as i64)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn max_value(&self) -> Fraction {
        self.values
            .iter()
            .copied()
            .fold(Fraction::ZERO, Fraction::max)
    }

    /// Same flow with every value multiplied by the positive rational `factor`.
    pub fn scaled(&self, factor: Fraction) -> Flow {
        Flow {
            orientation: self.orientation.clone(),
            values: self.values.iter().map(|&x| x * factor).collect(),
        }
    }
}

/// Per-vertex signed sum of values over incident half-edges.
pub fn boundary(sg: &SignedGraph, f: &Flow) -> Result<Vec<Fraction>> {
    f.orientation.check_consistent(sg.signature())?;
    if f.values.len() != sg.graph().edge_count() {
        return Err(Error::SignatureLength {
            expected: sg.graph().edge_count(),
            found: f.values.len(),
        });
    }
    Ok(raw_boundary(sg.graph(), f))
}

fn raw_boundary(g: &Multigraph, f: &Flow) -> Vec<Fraction> {
    let mut delta = vec![Fraction::ZERO; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        let [a, b] = f.orientation.pair(e);
        delta[edge.u] = delta[edge.u] + f.values[e] * a as i64;
        delta[edge.v] = delta[edge.v] + f.values[e] * b as i64;
    }
    delta
}

/// The claimed type of a flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FlowKind {
    /// Integer values in `[1, k-1]`, zero boundary.
    Integer { k: u32 },
    /// Rational values in `[1, r-1]`, zero boundary.
    Circular { r: Fraction },
    /// Rational values in `[1, r-1]`, boundary congruent to zero modulo `r`.
    Modular { r: Fraction },
}

impl fmt::Display for FlowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowKind::Integer { k } => write!(f, "integer {k}-flow"),
            FlowKind::Circular { r } => write!(f, "circular {r}-flow"),
            FlowKind::Modular { r } => write!(f, "modular {r}-flow"),
        }
    }
}

/// A flow together with everything needed to check it independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowCertificate {
    pub graph: Multigraph,
    pub fingerprint: String,
    pub signature: Signature,
    pub flow: Flow,
    pub kind: FlowKind,
    pub nowhere_zero: bool,
}

impl FlowCertificate {
    pub fn new(sg: &SignedGraph, flow: Flow, kind: FlowKind) -> Self {
        FlowCertificate {
            graph: sg.graph().clone(),
            fingerprint: sg.graph().fingerprint(),
            signature: sg.signature().clone(),
            flow,
            kind,
            nowhere_zero: true,
        }
    }

    pub fn signed_graph(&self) -> Result<SignedGraph> {
        SignedGraph::new(self.graph.clone(), self.signature.clone())
    }

    pub fn verify(&self) -> std::result::Result<(), Violation> {
        verify_flow(self)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// The same certificate reinterpreted as a circular flow for `r`.
    pub fn as_circular(&self, r: Fraction) -> FlowCertificate {
        FlowCertificate {
            kind: FlowKind::Circular { r },
            ..self.clone()
        }
    }

    /// `1 + max/min` over the values, the smallest circular `r` this flow certifies.
    pub fn tight_ratio(&self) -> Option<Fraction> {
        let min = self
            .flow
            .values
            .iter()
            .copied()
            .filter(|x| !x.is_zero())
            .min()?;
        Some(Fraction::ONE + self.flow.max_value() / min)
    }
}

/// The first reason a certificate fails to verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    FingerprintMismatch,
    LengthMismatch { expected: usize, found: usize },
    InvalidKind,
    InconsistentOrientation { edge: EdgeId },
    NegativeValue { edge: EdgeId, value: Fraction },
    ZeroValue { edge: EdgeId },
    NonIntegerValue { edge: EdgeId, value: Fraction },
    ValueOutOfRange { edge: EdgeId, value: Fraction },
    NonzeroBoundary { vertex: VertexId, value: Fraction },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FingerprintMismatch => write!(f, "graph fingerprint does not match"),
            Violation::LengthMismatch { expected, found } => {
                write!(f, "expected data for {expected} edges, found {found}")
            }
            Violation::InvalidKind => write!(f, "flow kind has an invalid parameter"),
            Violation::InconsistentOrientation { edge } => {
                write!(
                    f,
                    "orientation of edge {edge} is inconsistent with its sign"
                )
            }
            Violation::NegativeValue { edge, value } => {
                write!(f, "edge {edge} has negative value {value}")
            }
            Violation::ZeroValue { edge } => write!(f, "edge {edge} has value zero"),
            Violation::NonIntegerValue { edge, value } => {
                write!(f, "edge {edge} has non-integer value {value}")
            }
            Violation::ValueOutOfRange { edge, value } => {
                write!(f, "edge {edge} has out-of-range value {value}")
            }
            Violation::NonzeroBoundary { vertex, value } => {
                write!(f, "vertex {vertex} has boundary {value}")
            }
        }
    }
}

/// Exact check of a certificate against its claimed kind.
pub fn verify_flow(cert: &FlowCertificate) -> std::result::Result<(), Violation> {
    let g = &cert.graph;
    let m = g.edge_count();
    if cert.fingerprint != g.fingerprint() {
        return Err(Violation::FingerprintMismatch);
    }
    for found in [
        cert.signature.len(),
        cert.flow.values.len(),
        cert.flow.orientation.len(),
    ] {
        if found != m {
            return Err(Violation::LengthMismatch { expected: m, found });
        }
    }
    if let Err(Error::InconsistentOrientation { edge }) =
        cert.flow.orientation.check_consistent(&cert.signature)
    {
        return Err(Violation::InconsistentOrientation { edge });
    }
    let (upper, integral) = match cert.kind {
        FlowKind::Integer { k } if k >= 2 => (Fraction::integer(k as i64 - 1), true),
        FlowKind::Circular { r } | FlowKind::Modular { r } if r >= 2 => (r - 1, false),
        _ => return Err(Violation::InvalidKind),
    };
    for (edge, &value) in cert.flow.values.iter().enumerate() {
        if value < 0 {
            return Err(Violation::NegativeValue { edge, value });
        }
        if value.is_zero() {
            if cert.nowhere_zero {
                return Err(Violation::ZeroValue { edge });
            }
            continue;
        }
        if integral && !value.is_integer() {
            return Err(Violation::NonIntegerValue { edge, value });
        }
        if value < 1 || value > upper {
            return Err(Violation::ValueOutOfRange { edge, value });
        }
    }
    for (vertex, value) in raw_boundary(g, &cert.flow).into_iter().enumerate() {
        let ok = match cert.kind {
            FlowKind::Modular { r } => (value / r).is_integer(),
            _ => value.is_zero(),
        };
        if !ok {
            return Err(Violation::NonzeroBoundary { vertex, value });
        }
    }
    Ok(())
}

/// Moves a certificate to the signature obtained by switching at `at`.
///
/// Half-edges at switched vertices reverse; values are unchanged.
pub fn transport_flow(cert: &FlowCertificate, at: &SwitchSet) -> Result<FlowCertificate> {
    let g = &cert.graph;
    let signature = crate::signed::switch(g, &cert.signature, at)?;
    let mask = at.mask(g.vertex_count());
    let mut orientation = cert.flow.orientation.clone();
    for (e, edge) in g.edges().iter().enumerate() {
        if mask[edge.u] {
            orientation.flip_half_edge(HalfEdge {
                edge: e,
                end: End::U,
            });
        }
        if mask[edge.v] {
            orientation.flip_half_edge(HalfEdge {
                edge: e,
                end: End::V,
            });
        }
    }
    Ok(FlowCertificate {
        signature,
        flow: Flow {
            orientation,
            values: cert.flow.values.clone(),
        },
        ..cert.clone()
    })
}

/// Result of combining two flows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSum {
    pub flow: Flow,
    /// Every nonzero value has magnitude at least 1.
    pub valid: bool,
}

/// The oriented sum `c1*f1 + c2*f2`.
///
/// On each edge the result points the way of the larger contribution; opposite contributions
/// subtract. An edge whose contributions cancel keeps the direction it has in `f1`.
pub fn flow_sum(sg: &SignedGraph, f1: &Flow, f2: &Flow, coeffs: (i64, i64)) -> Result<FlowSum> {
    let m = sg.graph().edge_count();
    for f in [f1, f2] {
        if f.values.len() != m || f.orientation.len() != m {
            return Err(Error::GraphMismatch);
        }
        f.orientation.check_consistent(sg.signature())?;
    }
    let a = f1.reference_values();
    let b = f2.reference_values();
    let mut orientation = Orientation::reference(sg.signature());
    let mut values = Vec::with_capacity(m);
    for e in 0..m {
        let x = a[e] * coeffs.0 + b[e] * coeffs.1;
        if x < 0 || (x.is_zero() && f1.orientation.pair(e)[0] == -1) {
            orientation.reverse_edge(e);
        }
        values.push(x.abs());
    }
    let valid = values.iter().all(|x| x.is_zero() || *x >= 1);
    Ok(FlowSum {
        flow: Flow {
            orientation,
            values,
        },
        valid,
    })
}
