use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Structural reason a graph cannot be handed to the Perron machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ineligibility {
    EmptyCore,
    /// Input must equal its own 2-core (minimum degree two).
    NotTwoCore { min_degree: usize },
    Disconnected { components: usize },
    Cycle,
    Bipartite,
    /// The graph is a subdivision; B has this period.
    Periodic { period: usize },
    /// Girth too small for the requested walk radius.
    Girth { girth: Option<usize>, m: usize, m_max: Option<usize> },
    /// Nonempty 3-core, so greedy 3-coloring by peeling is unavailable.
    ThreeCore { core_size: usize },
}

impl fmt::Display for Ineligibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ineligibility::EmptyCore => write!(f, "2-core is empty"),
            Ineligibility::NotTwoCore { min_degree } => {
                write!(f, "graph is not its own 2-core (minimum degree {min_degree})")
            }
            Ineligibility::Disconnected { components } => {
                write!(f, "graph has {components} connected components")
            }
            Ineligibility::Cycle => write!(f, "2-core is a cycle (B reducible)"),
            Ineligibility::Bipartite => write!(f, "graph is bipartite (B has even period)"),
            Ineligibility::Periodic { period } => {
                write!(f, "graph is a subdivision (B has period {period})")
            }
            Ineligibility::Girth { girth, m, m_max } => {
                let g = girth.map_or("acyclic".to_string(), |g| g.to_string());
                let mm = m_max.map_or("unbounded".to_string(), |m| m.to_string());
                write!(f, "girth {g} is below 2m+1 for m = {m} (m_max = {mm})")
            }
            Ineligibility::ThreeCore { core_size } => {
                write!(f, "3-core is nonempty ({core_size} vertices)")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop on line {line}: vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("ineligible graph: {0}")]
    Ineligible(Ineligibility),

    #[error("no convergence after {iterations} iterations (best residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("graph too large for the dense path: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("premise not established: {0}")]
    InvalidPremise(String),

    #[error("constraint `{constraint}` violated (residual {residual:e})")]
    Constraint { constraint: String, residual: f64 },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("certificate was issued for a different graph")]
    WrongGraph,

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}

impl From<Ineligibility> for Error {
    fn from(value: Ineligibility) -> Self {
        Error::Ineligible(value)
    }
}
