use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// graph6 decoding failed; `offset` is the 0-based byte offset in the input line.
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("invalid graph JSON: {0}")]
    GraphJson(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{what} {value} exceeds limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("odd photon total {0}: odd totals have zero probability and are not partitioned")]
    OddTotal(u64),

    #[error("scaling constant c = {c} outside (0, {bound}); need 0 < c < 1/(||A||_2 + k)")]
    ScalingOutOfRange { c: String, bound: String },

    #[error("orbit {orbit:?} has {size} elements, over the budget of {budget}")]
    OrbitBudget { orbit: Vec<u32>, size: String, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
