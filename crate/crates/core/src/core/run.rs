//! The algorithm registry and the online execution loop.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::state::State;
use crate::core::trace::{DecisionTrace, TraceStep};
use crate::graphs::matching_greedy_step;
use crate::oracle::{self, SearchConfig};
use crate::packing::{pack_step, PackPolicy};
use crate::scheduling::{schedule_step, SchedPolicy};
use crate::seatres::{seat_step, SeatPolicy};

/// Every bundled online algorithm, by its stable CLI/report id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    GreedyIdentical,
    GreedyRelated,
    GreedyRelatedFastties,
    Fast,
    SantaGreedy,
    SantaLeastLoaded,
    #[serde(rename = "threshold-4-3")]
    Threshold43,
    FirstFit,
    BestFit,
    WorstFit,
    CoveringGreedy,
    DualFirstFit,
    DualBestFit,
    DualWorstFit,
    UnfairFirstFit,
    SeatFirstFit,
    SeatBestFit,
    MatchingGreedy,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 18] = [
        AlgorithmId::GreedyIdentical,
        AlgorithmId::GreedyRelated,
        AlgorithmId::GreedyRelatedFastties,
        AlgorithmId::Fast,
        AlgorithmId::SantaGreedy,
        AlgorithmId::SantaLeastLoaded,
        AlgorithmId::Threshold43,
        AlgorithmId::FirstFit,
        AlgorithmId::BestFit,
        AlgorithmId::WorstFit,
        AlgorithmId::CoveringGreedy,
        AlgorithmId::DualFirstFit,
        AlgorithmId::DualBestFit,
        AlgorithmId::DualWorstFit,
        AlgorithmId::UnfairFirstFit,
        AlgorithmId::SeatFirstFit,
        AlgorithmId::SeatBestFit,
        AlgorithmId::MatchingGreedy,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::GreedyIdentical => "greedy-identical",
            AlgorithmId::GreedyRelated => "greedy-related",
            AlgorithmId::GreedyRelatedFastties => "greedy-related-fastties",
            AlgorithmId::Fast => "fast",
            AlgorithmId::SantaGreedy => "santa-greedy",
            AlgorithmId::SantaLeastLoaded => "santa-least-loaded",
            AlgorithmId::Threshold43 => "threshold-4-3",
            AlgorithmId::FirstFit => "first-fit",
            AlgorithmId::BestFit => "best-fit",
            AlgorithmId::WorstFit => "worst-fit",
            AlgorithmId::CoveringGreedy => "covering-greedy",
            AlgorithmId::DualFirstFit => "dual-first-fit",
            AlgorithmId::DualBestFit => "dual-best-fit",
            AlgorithmId::DualWorstFit => "dual-worst-fit",
            AlgorithmId::UnfairFirstFit => "unfair-first-fit",
            AlgorithmId::SeatFirstFit => "seat-first-fit",
            AlgorithmId::SeatBestFit => "seat-best-fit",
            AlgorithmId::MatchingGreedy => "matching-greedy",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<AlgorithmId, CoreError> {
        AlgorithmId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| CoreError::UnknownAlgorithm(s.to_string()))
    }
}

/// An online algorithm: one irrevocable decision per request, seeing only
/// the current state and the request. Implementations may keep their own
/// history (the threshold policy does), never the future.
pub trait OnlinePolicy {
    fn decide(
        &mut self,
        instance: &ProblemInstance,
        state: &State,
        request: &Request,
    ) -> Result<Decision, CoreError>;
}

struct SchedAdapter {
    policy: SchedPolicy,
    /// Jobs seen so far; only the threshold policy reads this, to compute
    /// the exact optimum of each prefix it has seen.
    jobs: Vec<Request>,
    oracle_config: SearchConfig,
}

impl OnlinePolicy for SchedAdapter {
    fn decide(
        &mut self,
        instance: &ProblemInstance,
        state: &State,
        request: &Request,
    ) -> Result<Decision, CoreError> {
        let sched = match state {
            State::Makespan(s) | State::Santa(s) => s,
            _ => {
                return Err(CoreError::PolicyMismatch {
                    algorithm: format!("{:?}", self.policy),
                    reason: "requires a scheduling state".into(),
                })
            }
        };
        let prefix_opt = if self.policy == SchedPolicy::Threshold43 {
            self.jobs.push(request.clone());
            let result = oracle::solve_unconstrained(instance, &self.jobs, &self.oracle_config)?;
            Some(result.require_complete()?.clone())
        } else {
            None
        };
        schedule_step(self.policy, instance, sched, request, prefix_opt.as_ref())
    }
}

struct PackAdapter {
    policy: PackPolicy,
}

impl OnlinePolicy for PackAdapter {
    fn decide(
        &mut self,
        instance: &ProblemInstance,
        state: &State,
        request: &Request,
    ) -> Result<Decision, CoreError> {
        let bins = match state {
            State::BinPacking(s) | State::BinCovering(s) | State::DualBinPacking(s) => s,
            _ => {
                return Err(CoreError::PolicyMismatch {
                    algorithm: format!("{:?}", self.policy),
                    reason: "requires a packing state".into(),
                })
            }
        };
        pack_step(self.policy, instance, bins, request)
    }
}

struct SeatAdapter {
    policy: SeatPolicy,
}

impl OnlinePolicy for SeatAdapter {
    fn decide(
        &mut self,
        instance: &ProblemInstance,
        state: &State,
        request: &Request,
    ) -> Result<Decision, CoreError> {
        let seats = match state {
            State::SeatReservation(s) => s,
            _ => {
                return Err(CoreError::PolicyMismatch {
                    algorithm: format!("{:?}", self.policy),
                    reason: "requires a seat reservation state".into(),
                })
            }
        };
        seat_step(self.policy, instance, seats, request)
    }
}

struct MatchingAdapter;

impl OnlinePolicy for MatchingAdapter {
    fn decide(
        &mut self,
        _instance: &ProblemInstance,
        state: &State,
        request: &Request,
    ) -> Result<Decision, CoreError> {
        let matching = match state {
            State::Matching(s) => s,
            _ => {
                return Err(CoreError::PolicyMismatch {
                    algorithm: "MatchingGreedy".into(),
                    reason: "requires a matching state".into(),
                })
            }
        };
        matching_greedy_step(matching, request)
    }
}

/// Instantiates an algorithm, checking it applies to the instance.
pub fn make_policy(
    id: AlgorithmId,
    instance: &ProblemInstance,
) -> Result<Box<dyn OnlinePolicy>, CoreError> {
    let sched = |policy: SchedPolicy| -> Result<Box<dyn OnlinePolicy>, CoreError> {
        policy.check_applicable(instance)?;
        Ok(Box::new(SchedAdapter {
            policy,
            jobs: Vec::new(),
            oracle_config: SearchConfig::default(),
        }))
    };
    let pack = |policy: PackPolicy| -> Result<Box<dyn OnlinePolicy>, CoreError> {
        policy.check_applicable(instance)?;
        Ok(Box::new(PackAdapter { policy }))
    };
    let seat = |policy: SeatPolicy| -> Result<Box<dyn OnlinePolicy>, CoreError> {
        if !matches!(instance, ProblemInstance::SeatReservation { .. }) {
            return Err(CoreError::PolicyMismatch {
                algorithm: format!("{policy:?}"),
                reason: "requires a seat reservation instance".into(),
            });
        }
        Ok(Box::new(SeatAdapter { policy }))
    };
    match id {
        AlgorithmId::GreedyIdentical => sched(SchedPolicy::GreedyIdentical),
        AlgorithmId::GreedyRelated => sched(SchedPolicy::GreedyRelatedSlowTies),
        AlgorithmId::GreedyRelatedFastties => sched(SchedPolicy::GreedyRelatedFastTies),
        AlgorithmId::Fast => sched(SchedPolicy::Fast),
        AlgorithmId::SantaGreedy => sched(SchedPolicy::SantaGreedy),
        AlgorithmId::SantaLeastLoaded => sched(SchedPolicy::SantaLeastLoaded),
        AlgorithmId::Threshold43 => sched(SchedPolicy::Threshold43),
        AlgorithmId::FirstFit => pack(PackPolicy::FirstFit),
        AlgorithmId::BestFit => pack(PackPolicy::BestFit),
        AlgorithmId::WorstFit => pack(PackPolicy::WorstFit),
        AlgorithmId::CoveringGreedy => pack(PackPolicy::CoveringGreedy),
        AlgorithmId::DualFirstFit => pack(PackPolicy::DualFirstFit),
        AlgorithmId::DualBestFit => pack(PackPolicy::DualBestFit),
        AlgorithmId::DualWorstFit => pack(PackPolicy::DualWorstFit),
        AlgorithmId::UnfairFirstFit => pack(PackPolicy::UnfairFirstFit),
        AlgorithmId::SeatFirstFit => seat(SeatPolicy::FirstFit),
        AlgorithmId::SeatBestFit => seat(SeatPolicy::BestFit),
        AlgorithmId::MatchingGreedy => {
            if !matches!(instance, ProblemInstance::Matching) {
                return Err(CoreError::PolicyMismatch {
                    algorithm: "matching-greedy".into(),
                    reason: "requires a matching instance".into(),
                });
            }
            Ok(Box::new(MatchingAdapter))
        }
    }
}

/// Runs an online policy over the whole sequence, recording the decision and
/// prefix objective at every step.
pub fn run_online(
    instance: &ProblemInstance,
    policy: &mut dyn OnlinePolicy,
    sequence: &[Request],
) -> Result<DecisionTrace, CoreError> {
    instance.validate()?;
    let mut state = State::initial(instance);
    let mut steps = Vec::with_capacity(sequence.len());
    for (idx, request) in sequence.iter().enumerate() {
        instance.validate_request(request)?;
        let decision = policy.decide(instance, &state, request)?;
        state.apply(request, &decision).map_err(|e| match e {
            CoreError::IllegalDecision {
                decision, reason, ..
            } => CoreError::IllegalDecision {
                step: idx + 1,
                decision,
                reason,
            },
            other => other,
        })?;
        steps.push(TraceStep {
            decision,
            value: state.objective(),
        });
    }
    Ok(DecisionTrace {
        steps,
        final_value: state.objective(),
    })
}

/// Convenience: instantiate the algorithm by id and run it.
pub fn run_algorithm(
    instance: &ProblemInstance,
    id: AlgorithmId,
    sequence: &[Request],
) -> Result<DecisionTrace, CoreError> {
    let mut policy = make_policy(id, instance)?;
    run_online(instance, policy.as_mut(), sequence)
}

/// Builds a full trace (with prefix values) from a bare decision list by
/// replaying it, checking legality along the way. Used to script offline
/// strategies.
pub fn trace_from_decisions(
    instance: &ProblemInstance,
    sequence: &[Request],
    decisions: &[Decision],
) -> Result<DecisionTrace, CoreError> {
    if decisions.len() != sequence.len() {
        return Err(CoreError::TraceLengthMismatch {
            trace_len: decisions.len(),
            seq_len: sequence.len(),
        });
    }
    let mut state = State::initial(instance);
    let mut steps = Vec::with_capacity(sequence.len());
    for (idx, (request, decision)) in sequence.iter().zip(decisions.iter()).enumerate() {
        state.apply(request, decision).map_err(|e| match e {
            CoreError::IllegalDecision {
                decision, reason, ..
            } => CoreError::IllegalDecision {
                step: idx + 1,
                decision,
                reason,
            },
            other => other,
        })?;
        steps.push(TraceStep {
            decision: decision.clone(),
            value: state.objective(),
        });
    }
    Ok(DecisionTrace {
        steps,
        final_value: state.objective(),
    })
}

/// Final objective of an algorithm's run; the empty-state objective for an
/// empty sequence.
pub fn final_value(trace: &DecisionTrace) -> &Rat {
    &trace.final_value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn ids_round_trip() {
        for id in AlgorithmId::ALL {
            assert_eq!(id.as_str().parse::<AlgorithmId>().unwrap(), id);
        }
        assert!("no-such-algorithm".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn greedy_identical_reproduces_known_trace() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq: Vec<Request> = [(2, 1), (1, 1), (1, 1), (2, 1)]
            .iter()
            .map(|&(n, d)| Request::Job(rat(n, d)))
            .collect();
        let trace = run_algorithm(&inst, AlgorithmId::GreedyIdentical, &seq).unwrap();
        let values: Vec<Rat> = trace.prefix_values().cloned().collect();
        assert_eq!(values, vec![Rat::int(2), Rat::int(2), Rat::int(2), Rat::int(3)]);
        assert_eq!(trace.final_value, Rat::int(3));
    }

    #[test]
    fn policy_requires_matching_instance() {
        let inst = ProblemInstance::BinPacking;
        assert!(make_policy(AlgorithmId::GreedyIdentical, &inst).is_err());
        assert!(make_policy(AlgorithmId::SeatFirstFit, &inst).is_err());
        assert!(make_policy(AlgorithmId::MatchingGreedy, &inst).is_err());
        assert!(make_policy(AlgorithmId::FirstFit, &inst).is_ok());
    }

    #[test]
    fn threshold_reproduces_known_counterexample_trace() {
        // Six jobs driving the threshold policy to makespan 17/12 while the
        // offline optimum stays at 1.
        let inst = ProblemInstance::makespan_identical(3);
        let seq: Vec<Request> = [(3, 4), (1, 4), (5, 12), (1, 6), (7, 12), (5, 6)]
            .iter()
            .map(|&(n, d)| Request::Job(rat(n, d)))
            .collect();
        let trace = run_algorithm(&inst, AlgorithmId::Threshold43, &seq).unwrap();
        assert_eq!(trace.final_value, rat(17, 12));
    }

    #[test]
    fn trace_from_decisions_replays_and_validates() {
        let inst = ProblemInstance::makespan_identical(2);
        let seq = vec![Request::Job(Rat::one()), Request::Job(Rat::one())];
        let trace = trace_from_decisions(
            &inst,
            &seq,
            &[Decision::AssignMachine(0), Decision::AssignMachine(1)],
        )
        .unwrap();
        assert_eq!(trace.final_value, Rat::one());
        assert!(trace_from_decisions(&inst, &seq, &[Decision::AssignMachine(0)]).is_err());
    }
}
