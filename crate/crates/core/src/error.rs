use thiserror::Error;

use crate::search::SierpinskiDimensionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} {value} out of range")]
    OutOfRange { what: &'static str, value: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("graph is not a tree")]
    NotATree,

    #[error("tree is a path")]
    IsAPath,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("induced subgraph is disconnected or empty")]
    InducedDisconnected,

    #[error("empty landmark set cannot resolve a graph on more than one vertex")]
    EmptySetOnNontrivialGraph,

    #[error("function has {got} values, expected {expected}")]
    FunctionShapeMismatch { expected: usize, got: usize },

    #[error("product factors must be a canonically numbered cycle and a triangle")]
    WrongFactors,

    #[error("formula hypothesis violated: {0}")]
    HypothesisViolated(&'static str),

    /// Subset search ran out of budget. `lower..=upper` is the interval the
    /// search had established for the metric dimension when it stopped.
    #[error(
        "subset search budget exceeded after {examined} subsets; dimension in [{lower}, {upper:?}]"
    )]
    BudgetExceeded {
        lower: usize,
        upper: Option<usize>,
        examined: u64,
    },

    /// Function-space enumeration ran out of budget. The partial report holds
    /// the examined range and the running extremes; it is marked
    /// non-exhaustive.
    #[error("function enumeration budget exceeded after {} functions", partial.functions_examined)]
    EnumerationBudgetExceeded {
        partial: Box<SierpinskiDimensionReport>,
    },

    #[error("function space {n_h}^{n_g} does not fit in 128 bits")]
    FunctionSpaceOverflow { n_g: usize, n_h: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
