//! Exact nowhere-zero flows on signed graphs.
//!
//! The crate covers signed multigraphs and switching, exact verification of integer, circular and
//! modular flows, complete searches for flow numbers, flow spectra over switching classes,
//! the structural side (matchings, factors, colorings) and explicit flow constructions.

pub mod constructions;
pub mod corpus;
pub mod error;
pub mod flow;
pub mod fraction;
pub mod graph;
pub mod io;
pub mod signed;
pub mod spectrum;
pub mod structure;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use graph::{Edge, EdgeId, End, HalfEdge, Multigraph, VertexId};
pub use signed::{Sign, Signature, SignedGraph, SwitchSet};
