//! Convolutional network channel and Monte-Carlo error simulation.

mod model;
mod sim;

pub use model::{
    idle_probability, sample_error_step, windowed_error_sequence, ErrorModel, ErrorSource,
};
pub use sim::{
    ber_sweep, channel, run_frames, run_trial, stream_rng, ErrorCounts, SimConfig, SimRecord,
    SimResult, Simulator,
};

use thiserror::Error;

use crate::design::DesignError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("edge error probability {0} does not give a valid distribution")]
    InvalidProbability(f64),
    #[error("error spacing must be at least 1")]
    InvalidSpacing,
    #[error("error pattern refers to edge index {0} outside the network")]
    PatternOutOfRange(usize),
    #[error("scripted error vectors must have one valid symbol per edge")]
    BadScript,
    #[error("design has no input code")]
    NoInputCode,
    #[error("csv output: {0}")]
    Csv(String),
}

#[cfg(test)]
mod tests;
