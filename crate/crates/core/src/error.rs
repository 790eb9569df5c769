use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between vertices {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("edge {0} has a non-positive weight")]
    NonpositiveWeight(usize),
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("{what} = {requested} exceeds the configured cap {limit}")]
    SizeCapExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertex permutation is not an automorphism of the graph")]
    NotAnAutomorphism,
    #[error("walk does not close up or leaves the graph: {0}")]
    NotClosed(String),
    #[error("group elements are not enumerated")]
    GroupNotEnumerated,
    #[error("transportation problem values do not sum to zero")]
    UnbalancedProblem,
    #[error("not a probability vector: {0}")]
    NotProbability(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("identity check failed: {0}")]
    IdentityViolation(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("strategy {0} does not apply: {1}")]
    StrategyNotApplicable(&'static str, String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DisconnectedGraph => "DisconnectedGraph",
            Error::SelfLoop(_) => "SelfLoop",
            Error::ParallelEdge(..) => "ParallelEdge",
            Error::NonpositiveWeight(_) => "NonpositiveWeight",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::EmptyGraph => "EmptyGraph",
            Error::UnsupportedParameter(_) => "UnsupportedParameter",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::DependentBasis => "DependentBasis",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::NotClosed(_) => "NotClosed",
            Error::GroupNotEnumerated => "GroupNotEnumerated",
            Error::UnbalancedProblem => "UnbalancedProblem",
            Error::NotProbability(_) => "NotProbability",
            Error::InvalidMetric(_) => "InvalidMetric",
            Error::IdentityViolation(_) => "IdentityViolation",
            Error::Infeasible => "Infeasible",
            Error::Unbounded => "Unbounded",
            Error::UnknownStrategy(_) => "UnknownStrategy",
            Error::StrategyNotApplicable(..) => "StrategyNotApplicable",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
