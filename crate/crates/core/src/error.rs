//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("invalid generator spec: {0}")]
    Generator(String),

    #[error("stream error: {0}")]
    Stream(String),

    #[error("out-of-order event for partition `{partition}`: index {index} after {last}")]
    OutOfOrder {
        partition: String,
        index: u64,
        last: u64,
    },

    #[error("interval bounds ({start}, {end}) outside [1, {horizon}]")]
    IntervalBounds {
        start: usize,
        end: usize,
        horizon: usize,
    },

    #[error("forecast threshold {0} outside (0, 1]")]
    Threshold(f64),

    #[error("waiting-time horizon must be positive")]
    ZeroHorizon,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
