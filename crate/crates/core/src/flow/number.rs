//! Flow existence and flow numbers.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::Multigraph;
use crate::signed::{Admissibility, Inadmissibility, SignedGraph};

use super::exact::{
    circular_flow_number_exact, orientation_flow_at, ExactOptions, DEFAULT_EXACT_EDGE_CAP,
};
use super::search::{search, Domain, Plan};
use super::{Flow, FlowCertificate, FlowKind};

/// Every flow-admissible signed graph has a nowhere-zero integer flow below this bound.
pub const INTEGER_FLOW_CAP: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of branch values tried in one search.
    pub node_budget: u64,
    /// Maximum number of remembered failed states.
    pub memo_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 200_000_000,
            memo_cap: 4_000_000,
        }
    }
}

fn check_pq(p: i64, q: i64) -> Result<()> {
    if q < 1 || p < 2 * q {
        return Err(Error::InvalidParameter(format!(
            "need p >= 2q >= 2, got p={p}, q={q}"
        )));
    }
    Ok(())
}

fn certificate_from_signed(
    sg: &SignedGraph,
    values: &[i64],
    scale: i64,
    kind: FlowKind,
) -> FlowCertificate {
    let fr: Vec<Fraction> = values
        .iter()
        .map(|&x| Fraction::new(x, scale).expect("positive scale"))
        .collect();
    FlowCertificate::new(sg, Flow::from_reference_values(sg.signature(), &fr), kind)
}

fn run_signed(
    sg: &SignedGraph,
    plan: &Plan,
    p: i64,
    q: i64,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    let found = search(plan, Domain::Signed { lo: q, hi: p - q }, limits)?;
    Ok(found.map(|values| {
        let kind = if q == 1 {
            FlowKind::Integer { k: p as u32 }
        } else {
            FlowKind::Circular {
                r: Fraction::new(p, q).expect("q >= 1"),
            }
        };
        certificate_from_signed(sg, &values, q, kind)
    }))
}

/// A nowhere-zero integer `k`-flow, or `None` if none exists.
pub fn exists_integer_nzflow(
    sg: &SignedGraph,
    k: u32,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    run_signed(sg, &Plan::new(sg), k as i64, 1, limits)
}

/// An integer flow with every magnitude in `[q, p-q]`, returned divided by `q` as a circular `p/q`-flow.
///
/// For `q = 1` the certificate is labelled as an integer `p`-flow.
pub fn exists_pq_flow(
    sg: &SignedGraph,
    p: i64,
    q: i64,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    check_pq(p, q)?;
    run_signed(sg, &Plan::new(sg), p, q, limits)
}

/// A nowhere-zero modular `p/q`-flow: scaled values in `[q, p-q]` with boundaries vanishing modulo `p`.
pub fn exists_modular_flow(
    sg: &SignedGraph,
    p: i64,
    q: i64,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    check_pq(p, q)?;
    let plan = Plan::new(sg);
    let found = search(
        &plan,
        Domain::Modular {
            p,
            lo: q,
            hi: p - q,
        },
        limits,
    )?;
    Ok(found.map(|values| {
        let r = Fraction::new(p, q).expect("q >= 1");
        certificate_from_signed(sg, &values, q, FlowKind::Modular { r })
    }))
}

/// A nowhere-zero circular `r`-flow with real values, or `None` if none exists.
pub fn exists_circular_flow(
    sg: &SignedGraph,
    r: Fraction,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    check_pq(r.numer(), r.denom())?;
    circular_predicate(sg, &Plan::new(sg), r, DEFAULT_EXACT_EDGE_CAP, limits)
}

/// `2 + 1/t` for the largest odd degree `2t+1 >= 3`, else 2: no circular flow has a smaller ratio.
pub fn degree_lower_bound(g: &Multigraph) -> Fraction {
    (0..g.vertex_count())
        .map(|v| g.degree(v))
        .filter(|&d| d >= 3 && d % 2 == 1)
        .map(|d| Fraction::integer(2) + Fraction::new(1, (d / 2) as i64).expect("positive"))
        .max()
        .unwrap_or(Fraction::integer(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerFlowNumber {
    Infinite(Inadmissibility),
    Finite {
        k: u32,
        certificate: FlowCertificate,
    },
}

impl IntegerFlowNumber {
    pub fn value(&self) -> Option<u32> {
        match self {
            IntegerFlowNumber::Finite { k, .. } => Some(*k),
            IntegerFlowNumber::Infinite(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&FlowCertificate> {
        match self {
            IntegerFlowNumber::Finite { certificate, .. } => Some(certificate),
            IntegerFlowNumber::Infinite(_) => None,
        }
    }
}

/// Least `k` admitting a nowhere-zero integer `k`-flow, or infinity for inadmissible inputs.
pub fn integer_flow_number(sg: &SignedGraph, limits: SearchLimits) -> Result<IntegerFlowNumber> {
    if let Admissibility::NotAdmissible(reason) = sg.admissibility() {
        return Ok(IntegerFlowNumber::Infinite(reason));
    }
    let plan = Plan::new(sg);
    for k in 2..=INTEGER_FLOW_CAP {
        if let Some(certificate) = run_signed(sg, &plan, k as i64, 1, limits)? {
            return Ok(IntegerFlowNumber::Finite { k, certificate });
        }
    }
    Err(Error::Internal(format!(
        "admissible signed graph without a nowhere-zero {INTEGER_FLOW_CAP}-flow"
    )))
}

/// How much of the answer of [`circular_flow_number`] is proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Confirmed minimal over all rationals by the orientation oracle.
    Exact,
    /// Minimal among fractions with denominator at most `q_max`.
    UpperBound { q_max: u32 },
    /// The orientation oracle found a different value; both are reported.
    Discrepancy { exact: Fraction },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircularFlowNumber {
    Infinite(Inadmissibility),
    Finite {
        value: Fraction,
        certificate: FlowCertificate,
        completeness: Completeness,
    },
}

impl CircularFlowNumber {
    pub fn value(&self) -> Option<Fraction> {
        match self {
            CircularFlowNumber::Finite { value, .. } => Some(*value),
            CircularFlowNumber::Infinite(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&FlowCertificate> {
        match self {
            CircularFlowNumber::Finite { certificate, .. } => Some(certificate),
            CircularFlowNumber::Infinite(_) => None,
        }
    }

    pub fn completeness(&self) -> Option<Completeness> {
        match self {
            CircularFlowNumber::Finite { completeness, .. } => Some(*completeness),
            CircularFlowNumber::Infinite(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircularOptions {
    /// Largest denominator tried; `None` means twice the edge count.
    pub q_max: Option<u32>,
    /// Confirm the result with the orientation oracle when the graph is small enough.
    pub cross_check: bool,
    pub exact_edge_cap: usize,
    pub limits: SearchLimits,
}

impl Default for CircularOptions {
    fn default() -> Self {
        CircularOptions {
            q_max: None,
            cross_check: true,
            exact_edge_cap: DEFAULT_EXACT_EDGE_CAP,
            limits: SearchLimits::default(),
        }
    }
}

/// Reduced fractions `p/q` with `q <= q_max` and `lo <= p/q <= hi`, in increasing order.
pub fn farey_candidates(q_max: u32, lo: i64, hi: i64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for q in 1..=q_max as i64 {
        for p in lo * q..=hi * q {
            if p.gcd(&q) == 1 {
                out.push(Fraction::new(p, q).expect("q >= 1"));
            }
        }
    }
    out.sort();
    out
}

/// Node budget of the quick value search tried before the orientation check.
const PROBE_BUDGET: u64 = 1_000_000;

/// Whether a nowhere-zero circular `p/q`-flow exists.
///
/// A value search with magnitudes in `[q, p-q]` runs first since any solution there is a solution.
/// Absence is then settled by testing every orientation for a feasible flow at `r` when the graph has
/// at most `orientation_cap` edges. Larger graphs use a second value search instead: vertices of the
/// flow polytope of a fixed orientation have coordinates in `(1/2q) Z`, so a real flow exists exactly
/// when an integer flow with magnitudes in `[2q, 2p-2q]` does.
fn circular_predicate(
    sg: &SignedGraph,
    plan: &Plan,
    r: Fraction,
    orientation_cap: usize,
    limits: SearchLimits,
) -> Result<Option<FlowCertificate>> {
    let (p, q) = (r.numer(), r.denom());
    let kind = FlowKind::Circular { r };
    let small = sg.graph().edge_count() <= orientation_cap;
    let probe = if small {
        SearchLimits {
            node_budget: limits.node_budget.min(PROBE_BUDGET),
            ..limits
        }
    } else {
        limits
    };
    match search(plan, Domain::Signed { lo: q, hi: p - q }, probe) {
        Ok(Some(values)) => return Ok(Some(certificate_from_signed(sg, &values, q, kind))),
        Ok(None) if q == 1 && p == 2 => return Ok(None),
        Ok(None) | Err(Error::BudgetExhausted { .. }) if small => {
            return orientation_flow_at(sg, r)
        }
        Ok(None) => {}
        Err(e) => return Err(e),
    }
    Ok(search(
        plan,
        Domain::Signed {
            lo: 2 * q,
            hi: 2 * p - 2 * q,
        },
        limits,
    )?
    .map(|values| certificate_from_signed(sg, &values, 2 * q, kind)))
}

/// Least fraction with denominator at most `q_max` admitting a nowhere-zero circular flow.
pub fn circular_flow_number(sg: &SignedGraph, opts: CircularOptions) -> Result<CircularFlowNumber> {
    let (k, integer_cert) = match integer_flow_number(sg, opts.limits)? {
        IntegerFlowNumber::Infinite(reason) => return Ok(CircularFlowNumber::Infinite(reason)),
        IntegerFlowNumber::Finite { k, certificate } => (k, certificate),
    };
    let q_max = opts
        .q_max
        .unwrap_or(2 * sg.graph().edge_count() as u32)
        .max(1);
    let candidates = farey_candidates(q_max, 2, k as i64);
    let plan = Plan::new(sg);
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let mut best = integer_cert.as_circular(Fraction::integer(k as i64));
    while lo < hi {
        let mid = (lo + hi) / 2;
        match circular_predicate(sg, &plan, candidates[mid], opts.exact_edge_cap, opts.limits)? {
            Some(cert) => {
                hi = mid;
                let tight = cert.tight_ratio().expect("nonempty flow");
                best = cert;
                if let Ok(i) = candidates.binary_search(&tight) {
                    if i < hi {
                        hi = i;
                        best = best.as_circular(tight);
                    }
                }
            }
            None => lo = mid + 1,
        }
    }
    let value = candidates[lo];
    let certificate = best.as_circular(value);
    let completeness = if opts.cross_check && sg.graph().edge_count() <= opts.exact_edge_cap {
        let exact = circular_flow_number_exact(
            sg,
            ExactOptions {
                edge_cap: opts.exact_edge_cap,
                reverse: false,
            },
        )?;
        match exact.value() {
            Some(x) if x == value => Completeness::Exact,
            Some(x) => Completeness::Discrepancy { exact: x },
            None => return Err(Error::Internal("oracles disagree on admissibility".into())),
        }
    } else {
        Completeness::UpperBound { q_max }
    };
    Ok(CircularFlowNumber::Finite {
        value,
        certificate,
        completeness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farey_order_three() {
        let f: Vec<String> = farey_candidates(3, 2, 3)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(f, ["2/1", "7/3", "5/2", "8/3", "3/1"]);
    }
}
