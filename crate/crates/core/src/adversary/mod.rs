//! Adversarial request generators: every explicit lower-bound construction
//! under study, static or adaptive, each bundling a scripted offline witness
//! for the prefix-constrained optimum.

mod covering;
mod matching;
mod packing;
mod scheduling;
mod seatres;

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::run::OnlinePolicy;
use crate::core::state::State;
use crate::core::trace::{DecisionTrace, TraceStep};

pub use covering::CoveringLb;
pub use matching::MatchingRandom;
pub use packing::{AnyFitLb, UffLb};
pub use scheduling::{
    FastLb, GreedyFastTiesCounter, MakespanAdaptiveLb, MakespanGreedyLb, SantaRelatedAdaptive,
    ThresholdCounter,
};
pub use seatres::SeatResLb;

/// An adversarial construction: an instance, a request script (possibly
/// adaptive, i.e. reading the algorithm's decisions so far), and an optional
/// scripted offline witness for the emitted sequence.
///
/// `next_request` must be a pure function of the history, so a construction
/// can be replayed deterministically.
pub trait Construction {
    fn instance(&self) -> ProblemInstance;

    /// The next request given the requests served so far and the
    /// algorithm's decisions on them; `None` ends the sequence.
    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request>;

    /// A scripted offline decision trace for the emitted sequence, when the
    /// construction bundles one. It must be legal and prefix-dominant
    /// against the algorithm's trace (callers verify this with the witness
    /// checker before using it as an optimum).
    fn witness(&self, sequence: &[Request], alg_trace: &DecisionTrace) -> Option<DecisionTrace>;
}

/// Outcome of playing a construction against an online algorithm.
pub struct Playout {
    pub sequence: Vec<Request>,
    pub alg_trace: DecisionTrace,
    pub witness: Option<DecisionTrace>,
}

/// Drives a construction against an online policy to completion.
pub fn play(
    construction: &dyn Construction,
    policy: &mut dyn OnlinePolicy,
) -> Result<Playout, CoreError> {
    let instance = construction.instance();
    instance.validate()?;
    let mut state = State::initial(&instance);
    let mut history: Vec<(Request, Decision)> = Vec::new();
    let mut steps = Vec::new();
    while let Some(request) = construction.next_request(&history) {
        instance.validate_request(&request)?;
        let decision = policy.decide(&instance, &state, &request)?;
        state.apply(&request, &decision).map_err(|e| match e {
            CoreError::IllegalDecision {
                decision, reason, ..
            } => CoreError::IllegalDecision {
                step: history.len() + 1,
                decision,
                reason,
            },
            other => other,
        })?;
        steps.push(TraceStep {
            decision: decision.clone(),
            value: state.objective(),
        });
        history.push((request, decision));
    }
    let sequence: Vec<Request> = history.into_iter().map(|(r, _)| r).collect();
    let alg_trace = DecisionTrace {
        steps,
        final_value: state.objective(),
    };
    let witness = construction.witness(&sequence, &alg_trace);
    Ok(Playout {
        sequence,
        alg_trace,
        witness,
    })
}
