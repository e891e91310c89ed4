//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed graph6 record. `offset` is the byte position within the record.
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6Parse { offset: usize, reason: String },

    /// A graph is too large for the one-byte graph6 header we support.
    #[error("unsupported graph size {n}: {reason}")]
    UnsupportedSize { n: usize, reason: &'static str },

    /// Graph construction violated an invariant (self-loop, duplicate edge, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// n*d must be even for a d-regular graph on n vertices to exist.
    #[error("degree parity: n*d must be even (n={n}, d={d})")]
    DegreeParity { n: usize, d: usize },

    /// The configuration-model generator kept producing self-loops or
    /// multi-edges until the retry budget ran out.
    #[error("random regular generation gave up after {attempts} restarts (n={n}, d={d})")]
    RetryExhausted { n: usize, d: usize, attempts: usize },

    #[error("edge ({0}, {1}) not found in graph")]
    EdgeNotFound(u32, u32),

    /// A size or memory cap was exceeded. `what` names the resource.
    #[error("capacity exceeded for {what}: requested {requested}, limit {limit}")]
    Capacity {
        what: String,
        requested: u64,
        limit: u64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    /// Objective evaluation failed while probing a finite-difference stencil.
    #[error("objective evaluation failed at coordinate {coordinate}: {source}")]
    ObjectiveEval {
        coordinate: usize,
        #[source]
        source: Box<Error>,
    },

    /// The optimizer hit a non-finite value or gradient.
    #[error("optimizer diverged at iteration {iteration}: {reason} (last good value {last_value})")]
    Divergence {
        iteration: usize,
        reason: String,
        last_value: f64,
        last_point: Vec<f64>,
    },

    /// No fixed-angle entry for this (degree, p) pair.
    #[error("no angle entry for degree {degree}, p {p}; available: {available}")]
    NotAvailable {
        degree: u32,
        p: u32,
        available: String,
    },

    /// A stored registry or report failed schema validation. The message
    /// names the offending field.
    #[error("validation: {0}")]
    Validation(String),

    /// Numerical self-check failure (e.g. a Hermitian expectation came out
    /// with a large imaginary part).
    #[error("internal consistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a size/memory cap rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
