//! Acyclic unit-delay networks: topology, min-cut, linear network codes and
//! their transfer matrices.

mod code;
mod flow;
mod graph;
mod parse;
mod transfer;

pub use code::{random_network_code, NetworkCode};
pub use flow::{min_cut, MinCut};
pub use graph::{Edge, NetworkGraph};
pub use parse::{load_network, LoadedNetwork};
pub use transfer::{
    compute_transfer, delay_transfer, instantaneous_transfer, SinkTransfer, TransferSet,
};

use thiserror::Error;

use crate::galois::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("edge {edge} refers to unknown node {node}")]
    DanglingEndpoint { edge: String, node: String },
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("graph has a cycle through node {0}")]
    Cycle(String),
    #[error("{0}")]
    Invalid(String),
    #[error("sink {0} is unreachable from the source")]
    SinkUnreachable(String),
    #[error("{kind} kernel set on non-adjacent position {at}")]
    KernelOffSupport { kind: String, at: String },
    #[error("dimension {n} exceeds the min-cut {min_cut}")]
    DimensionExceedsMinCut { n: usize, min_cut: usize },
    #[error("transfer matrix at sink {0} is singular")]
    SingularTransfer(String),
    #[error("no valid network code found in {0} attempts")]
    TriesExhausted(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub const BUTTERFLY: &str = include_str!("../../fixtures/butterfly.net");
pub const COMB_4C2: &str = include_str!("../../fixtures/comb4c2.net");

/// Looks up a shipped network by name (`butterfly` or `4c2`).
pub fn builtin_network(name: &str) -> Option<&'static str> {
    match name {
        "butterfly" => Some(BUTTERFLY),
        "4c2" | "comb4c2" => Some(COMB_4C2),
        _ => None,
    }
}
