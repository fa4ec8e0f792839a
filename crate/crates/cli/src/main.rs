//! sgflow: nowhere-zero flows on signed graphs from the command line.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use signed_flows::constructions::{
    bipartite_four_flow, eulerian_union_four_flow, g_n_six_flow, g_t_three_flow, h_t_flows,
    induced_flow_on_double, make_family, oddness_four_flow, three_flow_via_one_factor, Family,
    FamilySpec,
};
use signed_flows::flow::{
    circular_flow_number, circular_flow_number_exact, integer_flow_number, CircularFlowNumber,
    CircularOptions, Completeness, ExactOptions, FlowCertificate, IntegerFlowNumber, SearchLimits,
};
use signed_flows::io::{
    emit_sg_named, encode_graph6, import_graph6, parse_certificate, parse_sg, CertificateDocument,
};
use signed_flows::signed::{bridges, Admissibility};
use signed_flows::spectrum::{
    LabOptions, SpectrumKind, SpectrumLab, SpectrumReport, DEFAULT_CLASS_CAP,
    DEFAULT_LAB_EXACT_EDGE_CAP,
};
use signed_flows::structure::{
    has_perfect_matching, has_t_factor, independence_number, kotzig_check, oddness, resistance,
    DEFAULT_COLORING_BUDGET, DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_MATCHING_BUDGET,
};
use signed_flows::{Error, Fraction, Multigraph, SignedGraph};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sgflow",
    version,
    about = "Flow numbers, flow spectra and certified flow constructions for signed graphs",
    long_about = "Graphs are read in the .sg format from FILE or standard input:\n\
                  \n  v <vertex count>\
                  \n  e <u> <v> <+|->      one line per edge, in edge-id order\
                  \n  # comment            (\"# name: ...\" names the graph)\n\
                  \nResults are JSON documents on standard output. Rationals are \"p/q\" strings.",
    after_help = "EXIT CODES:\n\
                  \n  0  success\
                  \n  1  negative answer (no flow, inadmissible, certificate rejected)\
                  \n  2  usage or input error\
                  \n  3  search budget or size cap reached\n\
                  \nEXAMPLES:\n\
                  \n  sgflow make --family H_t --param 2 | sgflow flow-number\
                  \n  sgflow make --family Petersen | sgflow spectrum --integer\
                  \n  sgflow circular-flow-number --exact graph.sg\
                  \n  sgflow verify cert.json"
)]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum branch values tried by one flow search
    #[arg(
        long,
        global = true,
        env = "SGFLOW_NODE_BUDGET",
        default_value_t = 200_000_000
    )]
    node_budget: u64,
    /// Maximum number of failed search states remembered
    #[arg(
        long,
        global = true,
        env = "SGFLOW_MEMO_CAP",
        default_value_t = 4_000_000
    )]
    memo_cap: usize,
    /// Largest cycle rank whose signature classes are enumerated
    #[arg(long, global = true, env = "SGFLOW_CLASS_CAP", default_value_t = DEFAULT_CLASS_CAP)]
    class_cap: usize,
    /// Largest edge count handed to the exact orientation oracle
    #[arg(long, global = true, env = "SGFLOW_EXACT_CAP", default_value_t = DEFAULT_LAB_EXACT_EDGE_CAP)]
    exact_cap: usize,
}

impl LimitArgs {
    fn search(&self) -> SearchLimits {
        SearchLimits {
            node_budget: self.node_budget,
            memo_cap: self.memo_cap,
        }
    }

    fn lab(&self) -> LabOptions {
        let limits = self.search();
        LabOptions {
            class_cap: self.class_cap,
            exact_edge_cap: self.exact_cap,
            circular: CircularOptions {
                cross_check: false,
                exact_edge_cap: self.exact_cap,
                limits,
                ..CircularOptions::default()
            },
            limits,
            ..LabOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide flow-admissibility (exit 1 if not admissible)
    Admissible { file: Option<PathBuf> },
    /// Integer flow number with a certificate
    FlowNumber { file: Option<PathBuf> },
    /// Circular flow number with a certificate
    CircularFlowNumber {
        file: Option<PathBuf>,
        /// Largest denominator tried by the Farey search (default: twice the edge count)
        #[arg(long)]
        qmax: Option<u32>,
        /// Use the orientation oracle, proving minimality over all rationals
        #[arg(long)]
        exact: bool,
    },
    /// Flow numbers attained over all switching classes of the underlying graph
    Spectrum {
        file: Option<PathBuf>,
        /// Integer flow numbers instead of circular ones
        #[arg(long)]
        integer: bool,
    },
    /// Spectrum restricted to negative sets inside the given edges
    XSpectrum {
        file: Option<PathBuf>,
        /// Comma-separated edge ids
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<usize>,
        #[arg(long)]
        integer: bool,
    },
    /// Negative sets attaining r minimally
    MinimalSets {
        file: Option<PathBuf>,
        /// Target flow number, as p/q or an integer
        #[arg(long)]
        r: Fraction,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        integer: bool,
    },
    /// Structural parameters of the underlying graph
    Structure {
        file: Option<PathBuf>,
        /// Fewest odd circuits in a 2-factor (cubic graphs)
        #[arg(long)]
        oddness: bool,
        /// Fewest edges missed by a 3-coloring (cubic graphs)
        #[arg(long)]
        resistance: bool,
        /// Independence number
        #[arg(long)]
        alpha: bool,
        /// Three perfect matchings with Hamiltonian pairwise unions (exit 1 if none)
        #[arg(long)]
        kotzig: bool,
        /// A spanning t-regular subgraph (exit 1 if none)
        #[arg(long, value_name = "T")]
        t_factor: Option<usize>,
    },
    /// Emit a family member in .sg format with its canonical signature
    Make {
        /// H_t, G_n, G_t, K2_3, Petersen, Kprime_nn, K_n or K_nn
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        param: usize,
    },
    /// Run one of the explicit flow constructions and print its certificate
    Construct {
        #[arg(long, value_enum)]
        recipe: Recipe,
        /// Input graph for recipes that take one
        file: Option<PathBuf>,
        /// Family parameter for h-t, g-t and g-n
        #[arg(long, default_value_t = 1)]
        param: usize,
        /// h-t: the circular flow instead of the integer 5-flow
        #[arg(long)]
        circular: bool,
        /// double: edges X; eulerian-union: the first subgraph
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
        /// eulerian-union: the second subgraph
        #[arg(long, value_delimiter = ',')]
        edges2: Vec<usize>,
    },
    /// Re-check a certificate document (exit 1 with the violation if it fails)
    Verify { certfile: PathBuf },
    /// Spectra of every graph in a graph6 catalog, one JSON line per graph
    Batch {
        #[arg(long)]
        graph6: PathBuf,
        /// Integer spectra only
        #[arg(long)]
        integer: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    /// Integer 3-flow on an odd-regular graph with a 1-factor
    ThreeFlow,
    /// 4-flow on a bipartite cubic graph
    BipartiteFourFlow,
    /// 4-flow on a cubic graph of oddness 2
    OddnessFourFlow,
    /// 6-flow on a signed Kotzig graph
    KotzigSixFlow,
    /// 4-flow from two Eulerian subgraphs covering the edges
    EulerianUnion,
    /// Flows on H_t
    #[value(name = "h-t")]
    HT,
    /// 3-flow on G_t
    #[value(name = "g-t")]
    GT,
    /// 6-flow on G_n with an odd normal signature
    #[value(name = "g-n")]
    GN,
    /// Induced flow on the doubled graph along X
    Double,
}

/// Whether the command answered in the affirmative.
enum Answer {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(EXIT_NEGATIVE),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(e) if e.is_resource_limit() => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<SignedGraph> {
    Ok(parse_sg(&read_text(path.map(PathBuf::as_path))?)?)
}

/// Writes to standard output, ignoring a reader that has gone away.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    ));
}

fn cert_value(cert: &FlowCertificate) -> Value {
    serde_json::to_value(CertificateDocument::from_certificate(cert)).expect("serializable")
}

fn completeness_value(c: Option<Completeness>) -> Value {
    match c {
        None => Value::Null,
        Some(Completeness::Exact) => json!("exact"),
        Some(Completeness::UpperBound { q_max }) => json!({ "upper_bound": { "q_max": q_max } }),
        Some(Completeness::Discrepancy { exact }) => json!({ "discrepancy": { "exact": exact } }),
    }
}

fn spectrum_value(report: &SpectrumReport) -> Value {
    json!({
        "kind": match report.kind {
            SpectrumKind::Circular => "circular",
            SpectrumKind::Integer => "integer",
        },
        "values": report.values(),
        "complete": report.is_complete(),
        "examined": report.examined,
        "inadmissible": report.inadmissible,
        "witnesses": report.entries.iter().map(|e| json!({
            "value": e.value,
            "negative_edges": e.signature.negative_set(),
            "completeness": completeness_value(e.completeness),
            "certificate": cert_value(&e.certificate),
        })).collect::<Vec<_>>(),
    })
}

fn kind_of(integer: bool) -> SpectrumKind {
    if integer {
        SpectrumKind::Integer
    } else {
        SpectrumKind::Circular
    }
}

fn run(cli: &Cli) -> Result<Answer> {
    let limits = &cli.limits;
    match &cli.command {
        Command::Admissible { file } => {
            let sg = read_graph(file.as_ref())?;
            match sg.admissibility() {
                Admissibility::Admissible => {
                    print(&json!({ "admissible": true }));
                    Ok(Answer::Yes)
                }
                Admissibility::NotAdmissible(reason) => {
                    print(&json!({ "admissible": false, "why": reason }));
                    Ok(Answer::No)
                }
            }
        }
        Command::FlowNumber { file } => {
            let sg = read_graph(file.as_ref())?;
            match integer_flow_number(&sg, limits.search())? {
                IntegerFlowNumber::Finite { k, certificate } => {
                    print(&json!({ "flow_number": k, "certificate": cert_value(&certificate) }));
                    Ok(Answer::Yes)
                }
                IntegerFlowNumber::Infinite(reason) => {
                    print(&json!({ "flow_number": null, "why": reason }));
                    Ok(Answer::No)
                }
            }
        }
        Command::CircularFlowNumber { file, qmax, exact } => {
            let sg = read_graph(file.as_ref())?;
            let result = if *exact {
                circular_flow_number_exact(
                    &sg,
                    ExactOptions {
                        edge_cap: limits.exact_cap,
                        reverse: false,
                    },
                )?
            } else {
                circular_flow_number(
                    &sg,
                    CircularOptions {
                        q_max: *qmax,
                        cross_check: false,
                        exact_edge_cap: limits.exact_cap,
                        limits: limits.search(),
                    },
                )?
            };
            match result {
                CircularFlowNumber::Finite {
                    value,
                    certificate,
                    completeness,
                } => {
                    print(&json!({
                        "circular_flow_number": value,
                        "completeness": completeness_value(Some(completeness)),
                        "certificate": cert_value(&certificate),
                    }));
                    Ok(Answer::Yes)
                }
                CircularFlowNumber::Infinite(reason) => {
                    print(&json!({ "circular_flow_number": null, "why": reason }));
                    Ok(Answer::No)
                }
            }
        }
        Command::Spectrum { file, integer } => {
            let sg = read_graph(file.as_ref())?;
            let mut lab = SpectrumLab::new(sg.graph(), limits.lab())?;
            print(&spectrum_value(&lab.spectrum(kind_of(*integer))?));
            Ok(Answer::Yes)
        }
        Command::XSpectrum {
            file,
            edges,
            integer,
        } => {
            let sg = read_graph(file.as_ref())?;
            let mut lab = SpectrumLab::new(sg.graph(), limits.lab())?;
            let report = lab.x_spectrum(kind_of(*integer), edges)?;
            print(&spectrum_value(&report));
            Ok(if report.entries.is_empty() {
                Answer::No
            } else {
                Answer::Yes
            })
        }
        Command::MinimalSets {
            file,
            r,
            max_size,
            integer,
        } => {
            let sg = read_graph(file.as_ref())?;
            let mut lab = SpectrumLab::new(sg.graph(), limits.lab())?;
            let sets = lab.r_minimal_sets(kind_of(*integer), *r, *max_size)?;
            print(&json!({ "r": r, "max_size": max_size, "sets": sets }));
            Ok(if sets.is_empty() {
                Answer::No
            } else {
                Answer::Yes
            })
        }
        Command::Structure {
            file,
            oddness: want_oddness,
            resistance: want_resistance,
            alpha,
            kotzig,
            t_factor,
        } => {
            let sg = read_graph(file.as_ref())?;
            structure(
                sg.graph(),
                *want_oddness,
                *want_resistance,
                *alpha,
                *kotzig,
                *t_factor,
            )
        }
        Command::Make { family, param } => {
            let family: Family = family.parse()?;
            if family.takes_parameter() && *param == 0 {
                bail!("family {family} needs --param");
            }
            let spec = FamilySpec::new(family, *param);
            let sg = make_family(spec)?;
            emit(&emit_sg_named(&sg, Some(&spec.to_string())));
            Ok(Answer::Yes)
        }
        Command::Construct {
            recipe,
            file,
            param,
            circular,
            edges,
            edges2,
        } => {
            let cert = construct(
                *recipe,
                file.as_ref(),
                *param,
                *circular,
                edges,
                edges2,
                limits,
            )?;
            print(&cert_value(&cert));
            Ok(Answer::Yes)
        }
        Command::Verify { certfile } => {
            let cert = parse_certificate(&read_text(Some(certfile))?)?;
            match cert.verify() {
                Ok(()) => {
                    print(&json!({ "valid": true, "kind": cert.kind }));
                    Ok(Answer::Yes)
                }
                Err(v) => {
                    print(&json!({ "valid": false, "violation": v.to_string() }));
                    eprintln!("certificate rejected: {v}");
                    Ok(Answer::No)
                }
            }
        }
        Command::Batch { graph6, integer } => batch(graph6, *integer, limits),
    }
}

fn structure(
    g: &Multigraph,
    want_oddness: bool,
    want_resistance: bool,
    alpha: bool,
    kotzig: bool,
    t_factor: Option<usize>,
) -> Result<Answer> {
    let mut report = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "regular_degree": g.regular_degree(),
        "bipartite": g.is_bipartite(),
        "bridges": bridges(g),
        "perfect_matching": has_perfect_matching(g),
    });
    let mut answer = Answer::Yes;
    if want_oddness {
        let o = oddness(g, DEFAULT_MATCHING_BUDGET)?;
        report["oddness"] = json!({ "value": o.oddness, "matching": o.matching });
    }
    if want_resistance {
        report["resistance"] = json!(resistance(g, DEFAULT_COLORING_BUDGET)?);
    }
    if alpha {
        report["alpha"] = json!(independence_number(g)?);
    }
    if kotzig {
        let found = kotzig_check(g, DEFAULT_COLORING_BUDGET)?;
        if found.is_none() {
            answer = Answer::No;
        }
        report["kotzig"] = json!(found);
    }
    if let Some(t) = t_factor {
        let w = has_t_factor(g, t, DEFAULT_EXHAUSTIVE_THRESHOLD)?;
        if w.is_none() {
            answer = Answer::No;
        }
        report["t_factor"] = json!({ "t": t, "edges": w.map(|w| w.edges) });
    }
    print(&report);
    Ok(answer)
}

fn construct(
    recipe: Recipe,
    file: Option<&PathBuf>,
    param: usize,
    circular: bool,
    edges: &[usize],
    edges2: &[usize],
    limits: &LimitArgs,
) -> Result<FlowCertificate> {
    Ok(match recipe {
        Recipe::HT => {
            let (integer, circ) = h_t_flows(param)?;
            if circular {
                circ
            } else {
                integer
            }
        }
        Recipe::GT => g_t_three_flow(param, limits.search())?,
        Recipe::GN => {
            let digons: Vec<usize> = (0..param.saturating_sub(1 - param % 2)).collect();
            g_n_six_flow(param, &digons)?
        }
        Recipe::ThreeFlow => three_flow_via_one_factor(read_graph(file)?.graph())?,
        Recipe::BipartiteFourFlow => bipartite_four_flow(read_graph(file)?.graph())?.certificate,
        Recipe::OddnessFourFlow => oddness_four_flow(read_graph(file)?.graph())?.certificate,
        Recipe::KotzigSixFlow => {
            let sg = read_graph(file)?;
            let Some(m) = kotzig_check(sg.graph(), DEFAULT_COLORING_BUDGET)? else {
                bail!(Error::HypothesisViolated(
                    "graph has no Kotzig coloring".into()
                ));
            };
            signed_flows::constructions::kotzig_six_flow(
                sg.graph(),
                sg.signature(),
                [&m[0], &m[1], &m[2]],
            )?
        }
        Recipe::EulerianUnion => {
            let sg = read_graph(file)?;
            eulerian_union_four_flow(sg.graph(), sg.signature(), edges, edges2)?
        }
        Recipe::Double => {
            let sg = read_graph(file)?;
            let base = match integer_flow_number(&sg, limits.search())? {
                IntegerFlowNumber::Finite { certificate, .. } => certificate,
                IntegerFlowNumber::Infinite(reason) => {
                    bail!(Error::HypothesisViolated(format!(
                        "input graph is not flow-admissible: {reason:?}"
                    )))
                }
            };
            induced_flow_on_double(sg.graph(), sg.signature(), edges, &base)?
        }
    })
}

fn batch(path: &Path, integer: bool, limits: &LimitArgs) -> Result<Answer> {
    let graphs = import_graph6(&read_text(Some(path))?)?;
    let mut capped = false;
    for (index, g) in graphs.iter().enumerate() {
        let mut line = json!({
            "index": index,
            "graph6": encode_graph6(g)?,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
        });
        match batch_entry(g, integer, limits) {
            Ok(spectra) => {
                for (k, v) in spectra {
                    line[k] = v;
                }
            }
            Err(e) if e.is_resource_limit() => {
                capped = true;
                line["error"] = json!(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        emit(&format!("{line}\n"));
    }
    if capped {
        bail!(Error::BudgetExhausted {
            budget: limits.node_budget
        });
    }
    Ok(Answer::Yes)
}

fn batch_entry(
    g: &Multigraph,
    integer: bool,
    limits: &LimitArgs,
) -> std::result::Result<Vec<(&'static str, Value)>, Error> {
    let mut lab = SpectrumLab::new(g, limits.lab())?;
    let mut out = vec![(
        "integer_spectrum",
        json!(lab.spectrum(SpectrumKind::Integer)?.values()),
    )];
    if !integer {
        let report = lab.spectrum(SpectrumKind::Circular)?;
        out.push(("spectrum", json!(report.values())));
        out.push(("complete", json!(report.is_complete())));
    }
    Ok(out)
}
