//! Shared vocabulary: exact rationals, problem definitions, requests,
//! decisions, traces, prefix profiles, the unified state, and the online
//! execution loop.

pub mod error;
pub mod problem;
pub mod rational;
pub mod run;
pub mod state;
pub mod trace;

pub use error::CoreError;
pub use problem::{Decision, Direction, ProblemInstance, Request};
pub use rational::{make_rational, rat, Rat};
pub use run::{make_policy, run_algorithm, run_online, trace_from_decisions, AlgorithmId, OnlinePolicy};
pub use state::State;
pub use trace::{prefix_profile, DecisionTrace, PrefixProfile, TraceStep};
