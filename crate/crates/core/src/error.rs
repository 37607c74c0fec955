use thiserror::Error;

use crate::tournament::VertexId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair {{{u}, {v}}} is oriented more than once")]
    DuplicatePair { u: VertexId, v: VertexId },
    #[error("pair {{{u}, {v}}} is never oriented")]
    MissingPair { u: VertexId, v: VertexId },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {v} is out of range for a tournament of order {n}")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("a tournament must have at least one vertex")]
    EmptyTournament,
    #[error("no strong tournament on 2 vertices exists")]
    OrderTwoImpossible,
    #[error("no strong tournament found after {0} tries")]
    ExhaustedTries(u64),
    #[error("order {n} is too large for exhaustive enumeration (max {max})")]
    OrderTooLarge { n: usize, max: usize },
    #[error("order {n} is outside the supported range [{min}, {max}]")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("order {0} is too small, at least 3 vertices are required")]
    OrderTooSmall(usize),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("tournament is not strongly connected")]
    NotStrong,
    #[error("vertex {0} is not a king")]
    NotAKing(VertexId),
    #[error("induced subtournament is not strongly connected")]
    NotStrongSubset,
    #[error("a 2-vertex subset has no Hamiltonian cycle")]
    OrderTwoSubset,
    #[error("target vertex {0} is not in the subset")]
    TargetNotInSubset(VertexId),
    #[error("king {0} is not in the subset")]
    KingNotInSubset(VertexId),
    #[error("cycle already spans all vertices")]
    CycleAlreadySpanning,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable variant name, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicatePair { .. } => "DuplicatePair",
            Error::MissingPair { .. } => "MissingPair",
            Error::SelfLoop(_) => "SelfLoop",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::EmptyTournament => "EmptyTournament",
            Error::OrderTwoImpossible => "OrderTwoImpossible",
            Error::ExhaustedTries(_) => "ExhaustedTries",
            Error::OrderTooLarge { .. } => "OrderTooLarge",
            Error::OrderOutOfRange { .. } => "OrderOutOfRange",
            Error::OrderTooSmall(_) => "OrderTooSmall",
            Error::EmptySubset => "EmptySubset",
            Error::NotStrong => "NotStrong",
            Error::NotAKing(_) => "NotAKing",
            Error::NotStrongSubset => "NotStrongSubset",
            Error::OrderTwoSubset => "OrderTwoSubset",
            Error::TargetNotInSubset(_) => "TargetNotInSubset",
            Error::KingNotInSubset(_) => "KingNotInSubset",
            Error::CycleAlreadySpanning => "CycleAlreadySpanning",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InternalContradiction(_) => "InternalContradiction",
            Error::MalformedCertificate(_) => "MalformedCertificate",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
