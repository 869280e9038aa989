//! Input code design for a network: error images, processing matrices,
//! decoding modes, sink decoders and the bound calculators.

mod analysis;
mod bounds;
mod decode;
mod patterns;
mod report;

pub use analysis::{
    build_w_s, choose_processing, multiplicity, select_decode_mode, sink_error_images,
    verify_code, weight, CneccDesign, DecodeMode, DesignOptions, InputAnalysis, Multiplicity,
    OutputAnalysis, PolyVec, SinkAnalysis, VectorSet,
};
pub use bounds::{
    bound_report, worst_case_mds_degree, worst_case_t_dfree_bound, t_dfree_bound, instantaneous_comparison,
    is_prime_power, error_weight_bound, mds_degree, mds_field_requirement, sufficient_field_requirement,
    BoundReport, CodeBounds, FieldRequirement, InstantaneousComparison, WeightPair,
};
pub use decode::{decode_at_sink, SinkDecoder};
pub use patterns::{enumerate_w_phi, weight_histogram, ErrorPatternSet, DEFAULT_BUDGET};
pub use report::{render_kv, render_text, report_records};

use thiserror::Error;

use crate::convcode::CodeError;
use crate::galois::AlgebraError;
use crate::netgraph::NetworkError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("error vector enumeration needs {needed} vectors, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown sink {0}")]
    UnknownSink(String),
    #[error("pattern line {line}: {reason}")]
    Pattern { line: usize, reason: String },
    #[error("processing function override leaves P_T non-polynomial")]
    NonPolynomialProcessing,
    #[error("processing function override at sink {0} leaves P_T non-polynomial")]
    NonPolynomialProcessingAt(String),
    #[error("input code has {code_n} outputs but the network code dimension is {network_n}")]
    RateMismatch { code_n: usize, network_n: usize },
    #[error("input code and network code use different fields")]
    FieldMismatch,
    #[error("design has no input code")]
    NoInputCode,
}
