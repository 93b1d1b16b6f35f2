use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("gain {re}+{im}i has modulus {modulus}, not a unit complex number")]
    NonUnitGain { re: f64, im: f64, modulus: f64 },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex id {id} out of range for graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("{what} limit exceeded: {actual} > {limit}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex sequence is not a cycle of the graph: {0:?}")]
    NotACycle(Vec<usize>),

    #[error("theorem invariant violated: {0}")]
    TheoremViolation(String),

    #[error("eigenvalue solver did not converge")]
    Convergence,

    #[error("construction retry budget exhausted after {attempts} attempts; last candidate:\n{last}")]
    RetryBudget { attempts: usize, last: String },
}
