mod common;

use proptest::prelude::*;
use signed_flows::constructions::{h_t, h_t_flows, k2_3, k_n, k_nn, petersen};
use signed_flows::corpus::named_corpus;
use signed_flows::flow::{
    boundary, circular_flow_number, circular_flow_number_exact, exists_circular_flow,
    exists_integer_nzflow, exists_modular_flow, exists_pq_flow, farey_candidates, flow_sum,
    integer_flow_number, transport_flow, verify_flow, CircularOptions, Completeness, ExactOptions,
    Flow, FlowCertificate, FlowKind, Orientation, SearchLimits, Violation,
};
use signed_flows::{Fraction, Multigraph, Signature, SignedGraph, SwitchSet};

use common::{bridgeless_signed, signed_graph};

fn frac(p: i64, q: i64) -> Fraction {
    Fraction::new(p, q).unwrap()
}

fn ints(v: &[i64]) -> Vec<Fraction> {
    v.iter().map(|&x| Fraction::integer(x)).collect()
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn named(name: &str) -> SignedGraph {
    named_corpus()
        .unwrap()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("no corpus graph {name}"))
        .graph
}

fn all_negative(g: Multigraph) -> SignedGraph {
    let m = g.edge_count();
    SignedGraph::new(g, Signature::all_negative(m)).unwrap()
}

/// Every map from the edges to `±{1..k-1}` with zero boundary, by plain enumeration.
fn brute_force_has_flow(sg: &SignedGraph, k: i64) -> bool {
    let m = sg.graph().edge_count();
    let choices: Vec<i64> = (1..k).flat_map(|x| [x, -x]).collect();
    let mut idx = vec![0usize; m];
    loop {
        let values: Vec<Fraction> = idx.iter().map(|&i| Fraction::integer(choices[i])).collect();
        let f = Flow::from_reference_values(sg.signature(), &values);
        if boundary(sg, &f).unwrap().iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Signed values of the unit flow around a closed walk given as a vertex sequence.
fn circuit_flow(g: &Multigraph, walk: &[usize]) -> Vec<Fraction> {
    let mut values = vec![Fraction::ZERO; g.edge_count()];
    for w in walk.windows(2) {
        let (a, b) = (w[0], w[1]);
        let e = (0..g.edge_count())
            .find(|&e| {
                let edge = g.edge(e);
                (edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a)
            })
            .unwrap();
        values[e] = Fraction::integer(if g.edge(e).u == a { 1 } else { -1 });
    }
    values
}

#[test]
fn boundary_examples() {
    let sg = SignedGraph::unsigned(Multigraph::new(2, [(0, 1)]).unwrap());
    let f = Flow::from_reference_values(sg.signature(), &ints(&[1]));
    assert_eq!(boundary(&sg, &f).unwrap(), ints(&[1, -1]));
    let p = SignedGraph::unsigned(petersen());
    assert!(boundary(&p, &Flow::zero(p.signature()))
        .unwrap()
        .iter()
        .all(|x| x.is_zero()));
    for t in 1..=3 {
        let (integer, circular) = h_t_flows(t).unwrap();
        let sg = h_t(t).unwrap();
        assert!(boundary(&sg, &integer.flow)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
        assert!(boundary(&sg, &circular.flow)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
    }
    let k23 = SignedGraph::unsigned(k2_3());
    let wrong = Flow::zero(&Signature::all_negative(3));
    assert!(boundary(&k23, &wrong).is_err());
}

#[test]
fn h_t_certificates_verify_and_zeroed_edge_is_reported() {
    for t in 1..=3 {
        let (integer, circular) = h_t_flows(t).unwrap();
        assert_eq!(verify_flow(&integer), Ok(()));
        assert_eq!(integer.kind, FlowKind::Integer { k: 5 });
        let values: std::collections::BTreeSet<Fraction> =
            integer.flow.values.iter().copied().collect();
        assert!(values.iter().all(|v| [1, 2, 4].iter().any(|&x| *v == x)));
        assert_eq!(verify_flow(&circular), Ok(()));
        assert_eq!(
            circular.kind,
            FlowKind::Circular {
                r: frac(3 * t as i64 + 2, t as i64)
            }
        );
        let mut zeroed = integer.clone();
        zeroed.flow.values[4] = Fraction::ZERO;
        assert_eq!(verify_flow(&zeroed), Err(Violation::ZeroValue { edge: 4 }));
    }
}

#[test]
fn constant_one_modular_flows_on_all_negative_regular_graphs() {
    for (g, t) in [
        (k_n(4).unwrap(), 1),
        (petersen(), 1),
        (k_nn(3).unwrap(), 1),
        (k_n(6).unwrap(), 2),
    ] {
        let sg = all_negative(g);
        let m = sg.graph().edge_count();
        let flow = Flow {
            orientation: Orientation::from_pairs(vec![[-1, -1]; m]).unwrap(),
            values: vec![Fraction::ONE; m],
        };
        let cert = FlowCertificate::new(
            &sg,
            flow,
            FlowKind::Modular {
                r: frac(2 * t + 1, t),
            },
        );
        assert_eq!(verify_flow(&cert), Ok(()));
    }
}

#[test]
fn transport_examples() {
    let cert = h_t_flows(2).unwrap().0;
    assert_eq!(transport_flow(&cert, &SwitchSet::new()).unwrap(), cert);
    let at: SwitchSet = [0, 3, 5].into_iter().collect();
    let moved = transport_flow(&cert, &at).unwrap();
    assert_eq!(verify_flow(&moved), Ok(()));
    assert_eq!(moved.flow.values, cert.flow.values);
    assert_eq!(transport_flow(&moved, &at).unwrap(), cert);
}

#[test]
fn doubled_hamiltonian_circuits_sum_to_a_four_flow() {
    let g = k_n(4).unwrap();
    let sg = SignedGraph::unsigned(g.clone());
    let phi1 = Flow::from_reference_values(sg.signature(), &circuit_flow(&g, &[0, 1, 2, 3, 0]));
    let phi2 = Flow::from_reference_values(sg.signature(), &circuit_flow(&g, &[0, 2, 1, 3, 0]));
    let zero = Flow::zero(sg.signature());
    assert_eq!(flow_sum(&sg, &phi1, &zero, (1, 1)).unwrap().flow, phi1);

    let sum = flow_sum(&sg, &phi1, &phi2, (2, 1)).unwrap();
    assert!(sum.valid);
    let cert = FlowCertificate::new(&sg, sum.flow, FlowKind::Integer { k: 4 });
    assert_eq!(verify_flow(&cert), Ok(()));

    let other = SignedGraph::unsigned(petersen());
    assert!(flow_sum(&other, &phi1, &phi2, (1, 1)).is_err());
}

#[test]
fn integer_flows_on_k4_match_brute_force() {
    let sg = SignedGraph::unsigned(k_n(4).unwrap());
    assert!(brute_force_has_flow(&sg, 4));
    assert!(!brute_force_has_flow(&sg, 3));
    let found = exists_integer_nzflow(&sg, 4, limits()).unwrap().unwrap();
    assert_eq!(verify_flow(&found), Ok(()));
    assert!(exists_integer_nzflow(&sg, 3, limits()).unwrap().is_none());
}

#[test]
fn inadmissible_k2_3_has_no_flow() {
    let sg = SignedGraph::new(k2_3(), Signature::from_negative_set(3, [0]).unwrap()).unwrap();
    assert!(exists_integer_nzflow(&sg, 6, limits()).unwrap().is_none());
    assert_eq!(integer_flow_number(&sg, limits()).unwrap().value(), None);
    assert_eq!(
        circular_flow_number_exact(&sg, ExactOptions::default())
            .unwrap()
            .value(),
        None
    );
}

#[test]
fn h_2_needs_five() {
    let sg = h_t(2).unwrap();
    assert!(exists_integer_nzflow(&sg, 5, limits()).unwrap().is_some());
    assert!(exists_integer_nzflow(&sg, 4, limits()).unwrap().is_none());
}

#[test]
fn integer_flow_numbers() {
    for t in 1..=3 {
        assert_eq!(
            integer_flow_number(&h_t(t).unwrap(), limits())
                .unwrap()
                .value(),
            Some(5)
        );
    }
    let p = SignedGraph::unsigned(petersen());
    assert_eq!(integer_flow_number(&p, limits()).unwrap().value(), Some(5));
    assert_eq!(
        integer_flow_number(&named("G_3 odd"), limits())
            .unwrap()
            .value(),
        Some(6)
    );
    assert!(exists_integer_nzflow(&p, 1, limits()).is_err());
}

#[test]
fn pq_flows_on_h_t() {
    let h2 = h_t(2).unwrap();
    assert!(exists_pq_flow(&h2, 4, 1, limits()).unwrap().is_none());
    let cert = exists_pq_flow(&h2, 8, 2, limits()).unwrap().unwrap();
    assert_eq!(verify_flow(&cert), Ok(()));
    assert_eq!(
        cert.kind,
        FlowKind::Circular {
            r: Fraction::integer(4)
        }
    );
    let h3 = h_t(3).unwrap();
    let cert = exists_pq_flow(&h3, 11, 3, limits()).unwrap().unwrap();
    assert_eq!(verify_flow(&cert), Ok(()));
    assert_eq!(cert.kind, FlowKind::Circular { r: frac(11, 3) });
    assert!(exists_pq_flow(&h3, 10, 3, limits()).unwrap().is_none());
    assert!(exists_circular_flow(&h3, frac(10, 3), limits())
        .unwrap()
        .is_none());
    assert!(exists_pq_flow(&h3, 5, 3, limits()).is_err());
}

#[test]
fn pq_at_q_one_agrees_with_integer_search() {
    for entry in named_corpus().unwrap() {
        for k in 2..=6 {
            let a = exists_pq_flow(&entry.graph, k, 1, limits()).unwrap();
            let b = exists_integer_nzflow(&entry.graph, k as u32, limits()).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "{} k={k}", entry.name);
        }
    }
}

#[test]
fn circular_flow_numbers() {
    let q8 = CircularOptions {
        q_max: Some(8),
        ..CircularOptions::default()
    };
    let k33 = circular_flow_number(
        &SignedGraph::unsigned(k_nn(3).unwrap()),
        CircularOptions::default(),
    )
    .unwrap();
    assert_eq!(k33.value(), Some(Fraction::integer(3)));
    assert_eq!(k33.completeness(), Some(Completeness::Exact));

    let p = circular_flow_number(&SignedGraph::unsigned(petersen()), q8).unwrap();
    assert_eq!(p.value(), Some(Fraction::integer(5)));
    assert_eq!(p.completeness(), Some(Completeness::Exact));
    assert_eq!(verify_flow(p.certificate().unwrap()), Ok(()));

    for t in 1..=3i64 {
        let h = h_t(t as usize).unwrap();
        let r = circular_flow_number(&h, q8).unwrap();
        assert_eq!(r.value(), Some(frac(3 * t + 2, t)));
        assert_eq!(verify_flow(r.certificate().unwrap()), Ok(()));
    }

    let bad = SignedGraph::new(k2_3(), Signature::from_negative_set(3, [1]).unwrap()).unwrap();
    assert_eq!(circular_flow_number(&bad, q8).unwrap().value(), None);
}

#[test]
fn farey_predecessors_of_h_t_values_are_absent() {
    let farey = farey_candidates(8, 2, 6);
    for t in 1..=3i64 {
        let h = h_t(t as usize).unwrap();
        let i = farey.binary_search(&frac(3 * t + 2, t)).unwrap();
        assert!(exists_circular_flow(&h, farey[i - 1], limits())
            .unwrap()
            .is_none());
        assert!(exists_circular_flow(&h, farey[i], limits())
            .unwrap()
            .is_some());
    }
}

#[test]
fn exact_oracle_examples() {
    let k4 = SignedGraph::unsigned(k_n(4).unwrap());
    for reverse in [false, true] {
        let opts = ExactOptions {
            reverse,
            ..ExactOptions::default()
        };
        let r = circular_flow_number_exact(&k4, opts).unwrap();
        assert_eq!(r.value(), Some(Fraction::integer(4)));
        assert_eq!(verify_flow(r.certificate().unwrap()), Ok(()));
    }
    let k23 = SignedGraph::unsigned(k2_3());
    assert_eq!(
        circular_flow_number_exact(&k23, ExactOptions::default())
            .unwrap()
            .value(),
        Some(Fraction::integer(3))
    );
    let p = SignedGraph::unsigned(petersen());
    let tight = ExactOptions {
        edge_cap: 10,
        ..ExactOptions::default()
    };
    assert!(circular_flow_number_exact(&p, tight).is_err());
}

#[test]
fn modular_flows() {
    let k4 = all_negative(k_n(4).unwrap());
    let cert = exists_modular_flow(&k4, 3, 1, limits()).unwrap().unwrap();
    assert_eq!(verify_flow(&cert), Ok(()));
    assert!(cert.flow.values.iter().all(|&x| x == 1));

    let k6 = all_negative(k_n(6).unwrap());
    let cert = exists_modular_flow(&k6, 5, 2, limits()).unwrap().unwrap();
    assert_eq!(verify_flow(&cert), Ok(()));
    assert!(cert.flow.values.iter().all(|&x| x == 1 || x == frac(3, 2)));

    let p = all_negative(petersen());
    let cert = exists_modular_flow(&p, 3, 1, limits()).unwrap().unwrap();
    assert!(cert.flow.values.iter().all(|&x| x == 1 || x == 2));

    let one_negative =
        SignedGraph::new(k2_3(), Signature::from_negative_set(3, [0]).unwrap()).unwrap();
    assert!(exists_modular_flow(&one_negative, 3, 1, limits())
        .unwrap()
        .is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_certificates_verify(sg in bridgeless_signed(7, 5)) {
        let number = integer_flow_number(&sg, limits()).unwrap();
        prop_assert_eq!(number.value().is_some(), sg.is_flow_admissible());
        if let Some(cert) = number.certificate() {
            prop_assert_eq!(verify_flow(cert), Ok(()));
            let k = number.value().unwrap();
            if k > 2 {
                prop_assert!(exists_integer_nzflow(&sg, k - 1, limits()).unwrap().is_none());
            }
        }
    }

    #[test]
    fn normalization_keeps_the_signed_flow(sg in signed_graph(6, 10), raw in prop::collection::vec(-4i64..=4, 10)) {
        let m = sg.graph().edge_count();
        let signed: Vec<Fraction> = raw[..m].iter().map(|&x| Fraction::integer(x)).collect();
        let f = Flow::from_reference_values(sg.signature(), &signed);
        prop_assert!(f.values.iter().all(|&x| x >= 0));
        prop_assert_eq!(f.reference_values(), signed.clone());
        let reference = Orientation::reference(sg.signature());
        let mut expected = vec![Fraction::ZERO; sg.graph().vertex_count()];
        for (e, edge) in sg.graph().edges().iter().enumerate() {
            let [a, b] = reference.pair(e);
            expected[edge.u] = expected[edge.u] + signed[e] * a as i64;
            expected[edge.v] = expected[edge.v] + signed[e] * b as i64;
        }
        prop_assert_eq!(boundary(&sg, &f).unwrap(), expected);
    }

    #[test]
    fn circular_flows_are_monotone(sg in bridgeless_signed(6, 4), extra in 0i64..6) {
        if let Some(cert) = exists_pq_flow(&sg, 7, 2, limits()).unwrap() {
            prop_assert_eq!(verify_flow(&cert), Ok(()));
            let bigger = cert.as_circular(frac(7, 2) + frac(extra, 3));
            prop_assert_eq!(verify_flow(&bigger), Ok(()));
            prop_assert!(exists_circular_flow(&sg, frac(4, 1), limits()).unwrap().is_some());
        }
    }

    #[test]
    fn transport_preserves_validity(sg in bridgeless_signed(7, 5), mask in any::<u8>()) {
        if let Some(cert) = integer_flow_number(&sg, limits()).unwrap().certificate() {
            let at: SwitchSet = (0..sg.graph().vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
            let moved = transport_flow(cert, &at).unwrap();
            prop_assert_eq!(verify_flow(&moved), Ok(()));
            prop_assert_eq!(transport_flow(&moved, &at).unwrap(), cert.clone());
        }
    }
}
