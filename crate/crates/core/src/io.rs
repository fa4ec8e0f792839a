//! Text formats: `.sg` signed graphs, graph6 catalogs, JSON flow certificates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{Flow, FlowCertificate, FlowKind, Orientation, Violation};
use crate::fraction::Fraction;
use crate::graph::Multigraph;
use crate::signed::{Sign, Signature, SignedGraph};

/// A parsed `.sg` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgDocument {
    pub name: Option<String>,
    pub graph: SignedGraph,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the `.sg` format:
///
/// ```text
/// # name: K_2^3
/// v 2
/// e 0 1 +
/// e 0 1 -
/// ```
///
/// `#` starts a comment; a comment of the form `# name: ...` names the graph. The minus sign may
/// also be written as U+2212.
pub fn parse_sg_document(text: &str) -> Result<SgDocument> {
    let mut name = None;
    let mut graph: Option<Multigraph> = None;
    let mut negative = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(rest) = comment.and_then(|c| c.trim().strip_prefix("name:")) {
            name = Some(rest.trim().to_string());
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["v", count] => {
                if graph.is_some() {
                    return Err(parse_error(line_no, "duplicate vertex count line"));
                }
                let n = count
                    .parse::<usize>()
                    .map_err(|_| parse_error(line_no, format!("bad vertex count {count:?}")))?;
                graph = Some(Multigraph::empty(n));
            }
            ["e", u, v, sign] => {
                let g = graph.as_mut().ok_or_else(|| {
                    parse_error(line_no, "edge line before the vertex count line")
                })?;
                let parse_vertex = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| parse_error(line_no, format!("bad vertex index {t:?}")))
                };
                let (u, v) = (parse_vertex(u)?, parse_vertex(v)?);
                let sign = match *sign {
                    "+" => Sign::Positive,
                    "-" | "\u{2212}" => Sign::Negative,
                    other => return Err(parse_error(line_no, format!("bad sign {other:?}"))),
                };
                let id = g
                    .add_edge(u, v)
                    .map_err(|e| parse_error(line_no, e.to_string()))?;
                if sign == Sign::Negative {
                    negative.push(id);
                }
            }
            _ => {
                return Err(parse_error(
                    line_no,
                    format!("unrecognized line {:?}", raw.trim()),
                ))
            }
        }
    }
    let graph = graph
        .ok_or_else(|| parse_error(text.lines().count().max(1), "missing vertex count line"))?;
    Ok(SgDocument {
        name,
        graph: SignedGraph::with_negative_set(graph, negative)?,
    })
}

pub fn parse_sg(text: &str) -> Result<SignedGraph> {
    Ok(parse_sg_document(text)?.graph)
}

/// Canonical `.sg` text: header, then one edge per line in id order.
pub fn emit_sg(sg: &SignedGraph) -> String {
    emit_sg_named(sg, None)
}

pub fn emit_sg_named(sg: &SignedGraph, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("# name: {name}\n"));
    }
    out.push_str(&format!("v {}\n", sg.graph().vertex_count()));
    for (e, edge) in sg.graph().edges().iter().enumerate() {
        out.push_str(&format!(
            "e {} {} {}\n",
            edge.u,
            edge.v,
            sg.signature().sign(e)
        ));
    }
    out
}

/// Decodes one graph6 line into a simple graph with edges sorted by `(u, v)`, `u < v`.
pub fn decode_graph6(line: &str) -> Result<Multigraph> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Document(format!(
            "invalid graph6 character in {line:?}"
        )));
    }
    if bytes.first() == Some(&b':') || bytes.first() == Some(&b';') {
        return Err(Error::Document(
            "sparse6 and digraph6 are not supported".into(),
        ));
    }
    let (n, rest) = match bytes {
        [] => return Err(Error::Document("empty graph6 line".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Document("truncated graph6 size".into()));
            }
            (
                rest[..6]
                    .iter()
                    .fold(0usize, |a, &b| a << 6 | (b - 63) as usize),
                &rest[6..],
            )
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Document("truncated graph6 size".into()));
            }
            (
                rest[..3]
                    .iter()
                    .fold(0usize, |a, &b| a << 6 | (b - 63) as usize),
                &rest[3..],
            )
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if rest.len() != needed {
        return Err(Error::Document(format!(
            "graph6 body has {} bytes, expected {needed} for {n} vertices",
            rest.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Multigraph::new(n, edges)
}

/// Encodes a simple graph in graph6.
pub fn encode_graph6(g: &Multigraph) -> Result<String> {
    let n = g.vertex_count();
    let mut adjacent = vec![vec![false; n]; n];
    for e in g.edges() {
        if adjacent[e.u][e.v] {
            return Err(Error::InvalidParameter(
                "graph6 cannot express parallel edges".into(),
            ));
        }
        adjacent[e.u][e.v] = true;
        adjacent[e.v][e.u] = true;
    }
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(adjacent[i][j]);
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push(byte + 63);
    }
    Ok(String::from_utf8(out).expect("printable ascii"))
}

/// Every non-blank line of a graph6 catalog.
pub fn import_graph6(text: &str) -> Result<Vec<Multigraph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode_graph6(l).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub const CERTIFICATE_FORMAT: &str = "signed-flow-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSection {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// The JSON certificate schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub format: String,
    pub tool: String,
    pub graph: GraphSection,
    pub fingerprint: String,
    pub signature: Vec<Sign>,
    /// `[tau at u, tau at v]` per edge.
    pub orientation: Vec<[i8; 2]>,
    pub values: Vec<Fraction>,
    pub kind: FlowKind,
    pub nowhere_zero: bool,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &FlowCertificate) -> Self {
        CertificateDocument {
            format: CERTIFICATE_FORMAT.to_string(),
            tool: format!("signed-flows {}", env!("CARGO_PKG_VERSION")),
            graph: GraphSection {
                vertices: cert.graph.vertex_count(),
                edges: cert.graph.edges().iter().map(|e| [e.u, e.v]).collect(),
            },
            fingerprint: cert.fingerprint.clone(),
            signature: cert.signature.signs().to_vec(),
            orientation: cert.flow.orientation.pairs().to_vec(),
            values: cert.flow.values.clone(),
            kind: cert.kind,
            nowhere_zero: cert.nowhere_zero,
        }
    }

    /// Rebuilds the certificate, checking the format tag, lengths and fingerprint (not the flow).
    pub fn into_certificate(self) -> Result<FlowCertificate> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(Error::Document(format!(
                "unsupported format {:?}",
                self.format
            )));
        }
        let graph = Multigraph::new(
            self.graph.vertices,
            self.graph.edges.iter().map(|e| (e[0], e[1])),
        )?;
        let m = graph.edge_count();
        if self.signature.len() != m || self.orientation.len() != m || self.values.len() != m {
            return Err(Error::Document(format!(
                "graph has {m} edges but signature, orientation and values have {}, {} and {}",
                self.signature.len(),
                self.orientation.len(),
                self.values.len()
            )));
        }
        let fingerprint = graph.fingerprint();
        if fingerprint != self.fingerprint {
            return Err(Error::Document(format!(
                "fingerprint mismatch: document says {}, graph hashes to {fingerprint}",
                self.fingerprint
            )));
        }
        Ok(FlowCertificate {
            graph,
            fingerprint,
            signature: Signature::from_signs(self.signature),
            flow: Flow {
                orientation: Orientation::from_pairs(self.orientation)?,
                values: self.values,
            },
            kind: self.kind,
            nowhere_zero: self.nowhere_zero,
        })
    }
}

pub fn certificate_to_json(cert: &FlowCertificate) -> String {
    serde_json::to_string_pretty(&CertificateDocument::from_certificate(cert))
        .expect("serializable")
}

/// Parses a certificate without checking the flow itself.
pub fn parse_certificate(text: &str) -> Result<FlowCertificate> {
    let doc: CertificateDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.into_certificate()
}

/// Parses and verifies a certificate.
pub fn load_certificate(text: &str) -> Result<FlowCertificate> {
    let cert = parse_certificate(text)?;
    cert.verify()
        .map_err(|v: Violation| Error::Document(format!("certificate does not verify: {v}")))?;
    Ok(cert)
}
