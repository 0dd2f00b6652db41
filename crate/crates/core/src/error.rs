use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`])
/// that the command-line front end forwards verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
    #[error("graph order {order} exceeds the vertex cap {cap}")]
    OrderOverflow { order: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("coloring covers {got} edges but the graph has {expected}")]
    ColoringDomain { expected: usize, got: usize },
    #[error("edge {{{0},{1}}} is not present in the graph")]
    MissingEdge(usize, usize),
    #[error("edge {{{u},{v}}} contradicts its frozen color")]
    FrozenContradiction { u: usize, v: usize },
    #[error("coloring leaves edge {{{u},{v}}} uncolored")]
    Incomplete { u: usize, v: usize },
    #[error("more than {cap} copies of the pattern exist")]
    EnumerationOverflow { cap: usize },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("{what} exceeds the cap of {cap} (got {got})")]
    CapExceeded { what: &'static str, cap: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no vertex of degree at most {d} (minimum degree is {min_degree})")]
    NoLowDegreeVertex { d: usize, min_degree: usize },
    #[error("no arrowing host found up to {m_max} vertices")]
    NotFound { m_max: usize },
    #[error("invalid path system: {0}")]
    InvalidPathSystem(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable identifier used in machine-readable error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedGraph6(_) => "malformed_graph6",
            Error::MalformedEdgeList(_) => "malformed_edge_list",
            Error::OrderOverflow { .. } => "order_overflow",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::InvalidPattern(_) => "invalid_pattern",
            Error::ColoringDomain { .. } => "coloring_domain",
            Error::MissingEdge(..) => "missing_edge",
            Error::FrozenContradiction { .. } => "frozen_contradiction",
            Error::Incomplete { .. } => "incomplete_coloring",
            Error::EnumerationOverflow { .. } => "enumeration_overflow",
            Error::BudgetExhausted { .. } => "budget_exhausted",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Precondition(_) => "precondition",
            Error::NoLowDegreeVertex { .. } => "no_low_degree_vertex",
            Error::NotFound { .. } => "not_found",
            Error::InvalidPathSystem(_) => "invalid_path_system",
            Error::Invariant(_) => "invariant",
        }
    }

    /// True for errors that mean "ran out of room" rather than "bad input".
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::EnumerationOverflow { .. }
                | Error::BudgetExhausted { .. }
                | Error::CapExceeded { .. }
                | Error::OrderOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
