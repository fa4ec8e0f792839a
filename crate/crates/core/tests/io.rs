mod common;

use proptest::prelude::*;
use signed_flows::constructions::{h_t_flows, petersen};
use signed_flows::corpus::cubic_multigraphs;
use signed_flows::flow::verify_flow;
use signed_flows::io::{
    certificate_to_json, decode_graph6, emit_sg, emit_sg_named, encode_graph6, import_graph6,
    load_certificate, parse_certificate, parse_sg, parse_sg_document,
};
use signed_flows::{Error, Multigraph};

use common::signed_graph;

/// The connected cubic graphs on 8 vertices, one per isomorphism class.
const CUBIC8: &str = "G}GOW[\nG{S_g[\nG{O_ww\nGsXP_[\nGsXPGs\n";

fn is_simple(g: &Multigraph) -> bool {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    pairs.sort_unstable();
    pairs.windows(2).all(|w| w[0] != w[1])
}

#[test]
fn sg_example() {
    let sg = parse_sg("v 2\ne 0 1 +\ne 0 1 +\ne 0 1 \u{2212}\n").unwrap();
    assert_eq!(sg.graph().edge_count(), 3);
    assert_eq!(sg.signature().negative_set(), vec![2]);
    assert!(!sg.is_flow_admissible());
    let spaced = parse_sg("  v   2 # two vertices\n\n e 0 1 +\ne 0 1 +   \ne 0 1 -\n").unwrap();
    assert_eq!(spaced, sg);
    assert_eq!(emit_sg(&sg), "v 2\ne 0 1 +\ne 0 1 +\ne 0 1 -\n");
}

#[test]
fn sg_names_and_errors() {
    let sg = parse_sg("v 3\ne 0 1 -\ne 1 2 +\n").unwrap();
    let named = emit_sg_named(&sg, Some("path"));
    let doc = parse_sg_document(&named).unwrap();
    assert_eq!(doc.name.as_deref(), Some("path"));
    assert_eq!(doc.graph, sg);

    assert!(matches!(
        parse_sg("v 2\ne 0 0 +\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_sg("v 2\ne 0 1 +\ne 1 5 -\n"),
        Err(Error::Parse { line: 3, .. })
    ));
    assert!(matches!(
        parse_sg("v two\n"),
        Err(Error::Parse { line: 1, .. })
    ));
}

#[test]
fn graph6_catalog() {
    let graphs = import_graph6(CUBIC8).unwrap();
    assert_eq!(graphs.len(), 5);
    let mut fingerprints: Vec<String> = Vec::new();
    for g in &graphs {
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!(g.is_cubic() && g.is_connected());
        fingerprints.push(g.fingerprint());
    }
    let simple: Vec<Multigraph> = cubic_multigraphs(8).into_iter().filter(is_simple).collect();
    assert_eq!(simple.len(), 5);

    assert!(import_graph6("").unwrap().is_empty());
    assert!(import_graph6("\n\n").unwrap().is_empty());

    let p = decode_graph6("IheA@GUAo").unwrap();
    assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
    assert!(decode_graph6("I!!").is_err());
    let mut parallel = petersen();
    parallel.add_edge(0, 1).unwrap();
    assert!(encode_graph6(&parallel).is_err());
}

#[test]
fn certificates_round_trip_through_json() {
    let (integer, circular) = h_t_flows(3).unwrap();
    for cert in [integer, circular] {
        let text = certificate_to_json(&cert);
        assert!(text.contains("\"11/3\"") || text.contains("\"5\"") || text.contains("\"k\": 5"));
        let back = load_certificate(&text).unwrap();
        assert_eq!(back, cert);
    }

    let (cert, _) = h_t_flows(1).unwrap();
    let text = certificate_to_json(&cert);
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["fingerprint"] = serde_json::Value::String("00".into());
    assert!(parse_certificate(&doc.to_string()).is_err());

    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["values"][0] = serde_json::Value::String("7/2".into());
    let tampered = parse_certificate(&doc.to_string()).unwrap();
    assert!(verify_flow(&tampered).is_err());
    assert!(load_certificate(&doc.to_string()).is_err());

    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["extra"] = serde_json::Value::Bool(true);
    assert!(parse_certificate(&doc.to_string()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sg_round_trips(sg in signed_graph(9, 14)) {
        let text = emit_sg(&sg);
        let back = parse_sg(&text).unwrap();
        prop_assert_eq!(&back, &sg);
        prop_assert_eq!(emit_sg(&back), text);
    }

    #[test]
    fn graph6_round_trips(sg in signed_graph(12, 20)) {
        let g = sg.graph();
        if is_simple(g) {
            let line = encode_graph6(g).unwrap();
            let back = decode_graph6(&line).unwrap();
            prop_assert_eq!(back.vertex_count(), g.vertex_count());
            let norm = |h: &Multigraph| {
                let mut p: Vec<(usize, usize)> = h.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
                p.sort_unstable();
                p
            };
            prop_assert_eq!(norm(&back), norm(g));
        }
    }
}
