use thiserror::Error;

use super::problem::Decision;

/// Errors surfaced by the core vocabulary: construction, validation, online
/// execution, and witness replay.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("not a rational: {0:?}")]
    BadRational(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("request does not match problem family: {0}")]
    RequestMismatch(String),

    #[error("unknown algorithm id: {0:?}")]
    UnknownAlgorithm(String),

    #[error("algorithm {algorithm} is not applicable to this instance: {reason}")]
    PolicyMismatch { algorithm: String, reason: String },

    #[error("illegal decision {decision:?} at step {step}: {reason}")]
    IllegalDecision {
        step: usize,
        decision: Decision,
        reason: String,
    },

    #[error(
        "prefix constraint violated at step {step}: offline value {offline} vs bound {bound}"
    )]
    PrefixViolation {
        step: usize,
        offline: String,
        bound: String,
    },

    #[error("trace length {trace_len} does not match sequence length {seq_len}")]
    TraceLengthMismatch { trace_len: usize, seq_len: usize },

    #[error(
        "recorded prefix value {recorded} at step {step} differs from recomputed value {actual}"
    )]
    TraceValueMismatch {
        step: usize,
        recorded: String,
        actual: String,
    },

    #[error("profile length {profile_len} does not match sequence length {seq_len}")]
    ProfileLengthMismatch { profile_len: usize, seq_len: usize },

    #[error("internal consistency error: {0}")]
    Internal(String),
}
