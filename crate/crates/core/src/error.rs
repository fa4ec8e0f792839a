use thiserror::Error;

/// Errors produced by graph construction, searches and document handling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("edge {edge} out of range (graph has {count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },

    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },

    #[error("signature has {found} entries but the graph has {expected} edges")]
    SignatureLength { expected: usize, found: usize },

    #[error("orientation is inconsistent with the signature at edge {edge}")]
    InconsistentOrientation { edge: usize },

    #[error("{what} is {value}, which exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("flows or certificates refer to different graphs")]
    GraphMismatch,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("certificate document: {0}")]
    Document(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for the outcomes that mean "gave up", as opposed to a definitive answer.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BudgetExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
