//! Exact offline optima by depth-first branch-and-bound.
//!
//! `solve_unconstrained` computes OPT(I): the best final objective over all
//! legal offline decision sequences. `solve_bounded` computes the
//! prefix-constrained optimum OPT_A(I): the best final objective over
//! offline sequences whose prefix objective never falls behind the supplied
//! prefix profile (<= at every step for MIN problems, >= for MAX problems).
//! The prefix constraint carries no slack.
//!
//! The search is exact: pruning uses admissible per-problem bounds and a
//! local incumbent only, so memoized subtree values are true optima. The
//! reported value is deterministic, and the witness is the lexicographically
//! smallest optimal decision sequence under the canonical decision order of
//! [`enumerate_decisions`].

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, Direction, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::state::State;
use crate::core::trace::{DecisionTrace, PrefixProfile, TraceStep};

/// Environment variable overriding the default node budget. Accepts a
/// positive integer, or `0`/`unlimited` for no budget.
pub const NODE_BUDGET_ENV: &str = "OBA_NODE_BUDGET";

const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Search knobs. The defaults (canonicalized, memoized, budgeted) are what
/// every caller outside the soundness tests should use.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of search nodes; `None` means unlimited.
    pub node_budget: Option<u64>,
    /// Symmetry reduction in decision enumeration and memo keys.
    pub canonicalize: bool,
    /// Memoize subtree optima keyed on (request index, canonical state).
    pub memoize: bool,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        let node_budget = match std::env::var(NODE_BUDGET_ENV) {
            Ok(v) if v == "unlimited" || v == "0" => None,
            Ok(v) => Some(v.parse().unwrap_or(DEFAULT_NODE_BUDGET)),
            Err(_) => Some(DEFAULT_NODE_BUDGET),
        };
        SearchConfig {
            node_budget,
            canonicalize: true,
            memoize: true,
        }
    }
}

impl SearchConfig {
    /// Unlimited, fully optimized configuration (for small inputs in tests).
    pub fn unlimited() -> SearchConfig {
        SearchConfig {
            node_budget: None,
            canonicalize: true,
            memoize: true,
        }
    }
}

/// Terminal status of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "COMPLETE")]
    Complete,
    #[serde(rename = "BUDGET_EXHAUSTED")]
    BudgetExhausted,
    #[serde(rename = "INFEASIBLE")]
    Infeasible,
}

/// Outcome of an oracle call.
///
/// When `Complete`, `value` is the exact optimum and `witness` achieves it
/// under every constraint the search ran with. When `BudgetExhausted`,
/// `value` is only the best leaf found so far (possibly `None`) and must
/// never be used as exact. `Infeasible` means no decision sequence satisfies
/// the prefix constraint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: Option<Rat>,
    pub witness: Option<DecisionTrace>,
    pub nodes: u64,
    pub status: Status,
}

impl OracleResult {
    /// The exact optimal value; an error unless the search completed.
    pub fn require_complete(&self) -> Result<&Rat, CoreError> {
        match (self.status, &self.value) {
            (Status::Complete, Some(v)) => Ok(v),
            (Status::BudgetExhausted, _) => Err(CoreError::Internal(format!(
                "search exhausted its node budget after {} nodes; best value so far {:?}",
                self.nodes, self.value
            ))),
            _ => Err(CoreError::Internal(
                "no feasible offline decision sequence".into(),
            )),
        }
    }
}

/// All legal decisions for `request` in `state`, symmetry-reduced: one
/// representative per class of interchangeable machines/bins/seats, bin
/// choices limited to open bins plus one fresh bin, and Reject always
/// included where rejection is allowed. The order is canonical: assignment
/// decisions by ascending index, then OpenNewBin / Reject.
pub fn enumerate_decisions(
    instance: &ProblemInstance,
    state: &State,
    request: &Request,
) -> Vec<Decision> {
    enumerate_with(instance, state, request, true)
}

fn enumerate_with(
    _instance: &ProblemInstance,
    state: &State,
    request: &Request,
    reduce: bool,
) -> Vec<Decision> {
    let mut out = Vec::new();
    match (state, request) {
        (State::Makespan(s), Request::Job(_)) | (State::Santa(s), Request::Job(_)) => {
            let mut seen: Vec<(&Rat, &Rat)> = Vec::new();
            for i in 0..s.machine_count() {
                let sig = (&s.speeds[i], &s.assigned[i]);
                if !reduce || !seen.contains(&sig) {
                    seen.push(sig);
                    out.push(Decision::AssignMachine(i));
                }
            }
        }
        (State::BinPacking(s), Request::Item(size)) => {
            let mut seen: Vec<&Rat> = Vec::new();
            for i in 0..s.loads.len() {
                if s.fits(i, size) && (!reduce || !seen.contains(&&s.loads[i])) {
                    seen.push(&s.loads[i]);
                    out.push(Decision::AssignBin(i));
                }
            }
            out.push(Decision::OpenNewBin);
        }
        (State::BinCovering(s), Request::Item(_)) => {
            let mut seen: Vec<&Rat> = Vec::new();
            for i in 0..s.loads.len() {
                if !reduce || !seen.contains(&&s.loads[i]) {
                    seen.push(&s.loads[i]);
                    out.push(Decision::AssignBin(i));
                }
            }
            out.push(Decision::OpenNewBin);
        }
        (State::DualBinPacking(s), Request::Item(size)) => {
            let mut seen: Vec<&Rat> = Vec::new();
            for i in 0..s.loads.len() {
                if s.fits(i, size) && (!reduce || !seen.contains(&&s.loads[i])) {
                    seen.push(&s.loads[i]);
                    out.push(Decision::AssignBin(i));
                }
            }
            out.push(Decision::Reject);
        }
        (State::SeatReservation(s), Request::Interval(a, b)) => {
            let mut seen: Vec<&Vec<(u32, u32)>> = Vec::new();
            for i in 0..s.seats.len() {
                if s.fits(i, *a, *b) && (!reduce || !seen.contains(&&s.seats[i])) {
                    seen.push(&s.seats[i]);
                    out.push(Decision::AssignSeat(i));
                }
            }
            out.push(Decision::Reject);
        }
        (State::Matching(s), Request::Edge(u, v, w)) => {
            // Accepting a non-positive weight can only hurt a maximum-weight
            // matching, so the reduced set drops it.
            if s.feasible(*u, *v) && (!reduce || w.is_positive()) {
                out.push(Decision::AcceptEdge);
            }
            out.push(Decision::RejectEdge);
        }
        _ => {}
    }
    out
}

struct Search<'a> {
    instance: &'a ProblemInstance,
    sequence: &'a [Request],
    profile: Option<&'a PrefixProfile>,
    direction: Direction,
    config: &'a SearchConfig,
    memo: HashMap<(usize, String), Option<Rat>>,
    nodes: u64,
    aborted: bool,
    /// Best feasible leaf seen so far; the reported value on budget
    /// exhaustion.
    best_leaf: Option<Rat>,
    /// When set, budget checks are off (the main search already completed).
    reconstructing: bool,
    /// Sum of job/item sizes (or positive edge weights) in sequence[i..].
    suffix_sum: Vec<Rat>,
    /// Largest job/item size in sequence[i..].
    suffix_max: Vec<Rat>,
}

impl<'a> Search<'a> {
    fn new(
        instance: &'a ProblemInstance,
        sequence: &'a [Request],
        profile: Option<&'a PrefixProfile>,
        config: &'a SearchConfig,
    ) -> Search<'a> {
        let n = sequence.len();
        let mut suffix_sum = vec![Rat::zero(); n + 1];
        let mut suffix_max = vec![Rat::zero(); n + 1];
        for i in (0..n).rev() {
            let contribution = match &sequence[i] {
                Request::Job(s) | Request::Item(s) => s.clone(),
                Request::Edge(_, _, w) if w.is_positive() => w.clone(),
                _ => Rat::zero(),
            };
            suffix_max[i] = contribution.clone().max(suffix_max[i + 1].clone());
            suffix_sum[i] = contribution + &suffix_sum[i + 1];
        }
        Search {
            instance,
            sequence,
            profile,
            direction: instance.direction(),
            config,
            memo: HashMap::new(),
            nodes: 0,
            aborted: false,
            best_leaf: None,
            reconstructing: false,
            suffix_sum,
            suffix_max,
        }
    }

    fn better(&self, a: &Rat, b: &Rat) -> bool {
        match self.direction {
            Direction::Min => a < b,
            Direction::Max => a > b,
        }
    }

    /// Admissible bound on the best final objective reachable from `state`
    /// with requests `idx..` left: a lower bound for MIN problems, an upper
    /// bound for MAX problems.
    fn bound(&self, state: &State, idx: usize) -> Rat {
        let remaining = self.sequence.len() - idx;
        match state {
            State::Makespan(s) => {
                let speed_sum: Rat = s.speeds.iter().sum();
                let avg = (s.total_assigned() + &self.suffix_sum[idx]) / speed_sum;
                let mut lb = crate::scheduling::makespan(s).max(avg);
                if remaining > 0 {
                    // Speeds are non-increasing, so machine 0 is fastest.
                    lb = lb.max(&self.suffix_max[idx] / &s.speeds[0]);
                }
                lb
            }
            State::Santa(s) => {
                let empty = s.assigned.iter().filter(|a| a.is_zero()).count();
                if empty > remaining {
                    return Rat::zero();
                }
                let speed_sum: Rat = s.speeds.iter().sum();
                (s.total_assigned() + &self.suffix_sum[idx]) / speed_sum
            }
            State::BinPacking(s) => {
                let volume = s.loads.iter().sum::<Rat>() + &self.suffix_sum[idx];
                crate::packing::bins_used(s).max(volume.ceil())
            }
            State::BinCovering(s) => {
                let loose: Rat = s.loads.iter().filter(|l| **l < Rat::one()).sum();
                crate::packing::covered_bins(s) + (loose + &self.suffix_sum[idx]).floor()
            }
            State::DualBinPacking(s) => Rat::int(s.accepted as i64 + remaining as i64),
            State::SeatReservation(s) => Rat::int(s.accepted as i64 + remaining as i64),
            State::Matching(s) => &s.total_weight + &self.suffix_sum[idx],
        }
    }

    /// Memo key: the canonical state. Interchangeable machines (same speed),
    /// bins, and seats are merged by sorting; everything the future value
    /// depends on is included exactly.
    fn canon_key(&self, state: &State) -> String {
        let mut key = String::new();
        match state {
            State::Makespan(s) | State::Santa(s) => {
                let mut pairs: Vec<(&Rat, &Rat)> =
                    s.speeds.iter().zip(s.assigned.iter()).collect();
                if self.config.canonicalize {
                    pairs.sort();
                }
                for (speed, load) in pairs {
                    let _ = write!(key, "{speed}@{load};");
                }
            }
            State::BinPacking(s) | State::BinCovering(s) | State::DualBinPacking(s) => {
                let mut loads: Vec<&Rat> = s.loads.iter().collect();
                if self.config.canonicalize {
                    loads.sort();
                }
                for load in loads {
                    let _ = write!(key, "{load};");
                }
                let _ = write!(key, "a{}", s.accepted);
            }
            State::SeatReservation(s) => {
                let mut seats: Vec<&Vec<(u32, u32)>> = s.seats.iter().collect();
                if self.config.canonicalize {
                    seats.sort();
                }
                for seat in seats {
                    let _ = write!(key, "{seat:?};");
                }
                let _ = write!(key, "a{}", s.accepted);
            }
            State::Matching(s) => {
                let _ = write!(key, "{:?}w{}", s.matched, s.total_weight);
            }
        }
        key
    }

    /// Exact best final objective from (`idx`, `state`); `None` when no
    /// feasible completion exists. Meaningless once `self.aborted` is set.
    fn eval(&mut self, idx: usize, state: &State) -> Option<Rat> {
        self.nodes += 1;
        if !self.reconstructing {
            if let Some(budget) = self.config.node_budget {
                if self.nodes > budget {
                    self.aborted = true;
                }
            }
        }
        if self.aborted {
            return None;
        }
        if idx == self.sequence.len() {
            let value = state.objective();
            let note = match &self.best_leaf {
                None => true,
                Some(best) => self.better(&value, best),
            };
            if note {
                self.best_leaf = Some(value.clone());
            }
            return Some(value);
        }
        let key = if self.config.memoize {
            let k = (idx, self.canon_key(state));
            if let Some(hit) = self.memo.get(&k) {
                return hit.clone();
            }
            Some(k)
        } else {
            None
        };
        let request = &self.sequence[idx];
        let mut best: Option<Rat> = None;
        for decision in enumerate_with(self.instance, state, request, self.config.canonicalize) {
            let mut child = state.clone();
            if child.apply(request, &decision).is_err() {
                continue;
            }
            let prefix_value = child.objective();
            if let Some(profile) = self.profile {
                if !profile.admits(idx, &prefix_value) {
                    continue;
                }
            }
            if let Some(b) = &best {
                // Skip subtrees that cannot strictly improve this node's
                // local best; ties keep the earlier (canonically smaller)
                // branch, and the memoized value stays exact.
                let bound = self.bound(&child, idx + 1);
                if !self.better(&bound, b) {
                    continue;
                }
            }
            if let Some(completion) = self.eval(idx + 1, &child) {
                let take = match &best {
                    None => true,
                    Some(b) => self.better(&completion, b),
                };
                if take {
                    best = Some(completion);
                }
            }
            if self.aborted {
                return best;
            }
        }
        if let Some(k) = key {
            self.memo.insert(k, best.clone());
        }
        best
    }

    /// Second descent: the lexicographically smallest optimal decision
    /// sequence, picking at each step the first canonical decision whose
    /// subtree value equals the optimum.
    fn reconstruct(&mut self, value: &Rat) -> Result<DecisionTrace, CoreError> {
        self.reconstructing = true;
        let mut state = State::initial(self.instance);
        let mut steps = Vec::with_capacity(self.sequence.len());
        let target = value.clone();
        for idx in 0..self.sequence.len() {
            let request = &self.sequence[idx];
            let mut advanced = false;
            for decision in
                enumerate_with(self.instance, &state, request, self.config.canonicalize)
            {
                let mut child = state.clone();
                if child.apply(request, &decision).is_err() {
                    continue;
                }
                let prefix_value = child.objective();
                if let Some(profile) = self.profile {
                    if !profile.admits(idx, &prefix_value) {
                        continue;
                    }
                }
                if self.eval(idx + 1, &child) == Some(target.clone()) {
                    steps.push(TraceStep {
                        decision,
                        value: prefix_value,
                    });
                    state = child;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Err(CoreError::Internal(format!(
                    "witness reconstruction found no optimal decision at step {}",
                    idx + 1
                )));
            }
        }
        Ok(DecisionTrace {
            steps,
            final_value: state.objective(),
        })
    }
}

fn solve(
    instance: &ProblemInstance,
    sequence: &[Request],
    profile: Option<&PrefixProfile>,
    config: &SearchConfig,
) -> Result<OracleResult, CoreError> {
    instance.validate()?;
    for request in sequence {
        instance.validate_request(request)?;
    }
    if let Some(profile) = profile {
        if profile.len() != sequence.len() {
            return Err(CoreError::ProfileLengthMismatch {
                profile_len: profile.len(),
                seq_len: sequence.len(),
            });
        }
    }
    let mut search = Search::new(instance, sequence, profile, config);
    let initial = State::initial(instance);
    let value = search.eval(0, &initial);
    if search.aborted {
        return Ok(OracleResult {
            value: search.best_leaf.clone(),
            witness: None,
            nodes: search.nodes,
            status: Status::BudgetExhausted,
        });
    }
    match value {
        None => Ok(OracleResult {
            value: None,
            witness: None,
            nodes: search.nodes,
            status: Status::Infeasible,
        }),
        Some(v) => {
            let witness = search.reconstruct(&v)?;
            Ok(OracleResult {
                value: Some(v),
                witness: Some(witness),
                nodes: search.nodes,
                status: Status::Complete,
            })
        }
    }
}

/// Exact unconstrained offline optimum over the whole sequence.
pub fn solve_unconstrained(
    instance: &ProblemInstance,
    sequence: &[Request],
    config: &SearchConfig,
) -> Result<OracleResult, CoreError> {
    solve(instance, sequence, None, config)
}

/// Exact prefix-constrained offline optimum: at every prefix length t, the
/// offline objective must be <= profile[t] (MIN) or >= profile[t] (MAX).
pub fn solve_bounded(
    instance: &ProblemInstance,
    sequence: &[Request],
    profile: &PrefixProfile,
    config: &SearchConfig,
) -> Result<OracleResult, CoreError> {
    solve(instance, sequence, Some(profile), config)
}

/// Replays a scripted offline trace, verifying legality of every decision,
/// agreement of every recorded prefix value, and (when a profile is given)
/// the prefix constraint at every step. Steps are numbered from 1 in errors.
/// Returns the final objective value.
pub fn check_witness(
    instance: &ProblemInstance,
    sequence: &[Request],
    profile: Option<&PrefixProfile>,
    trace: &DecisionTrace,
) -> Result<Rat, CoreError> {
    instance.validate()?;
    if trace.len() != sequence.len() {
        return Err(CoreError::TraceLengthMismatch {
            trace_len: trace.len(),
            seq_len: sequence.len(),
        });
    }
    if let Some(profile) = profile {
        if profile.len() != sequence.len() {
            return Err(CoreError::ProfileLengthMismatch {
                profile_len: profile.len(),
                seq_len: sequence.len(),
            });
        }
    }
    let mut state = State::initial(instance);
    for (idx, (request, step)) in sequence.iter().zip(trace.steps.iter()).enumerate() {
        instance.validate_request(request)?;
        state.apply(request, &step.decision).map_err(|e| match e {
            CoreError::IllegalDecision {
                decision, reason, ..
            } => CoreError::IllegalDecision {
                step: idx + 1,
                decision,
                reason,
            },
            other => other,
        })?;
        let value = state.objective();
        if value != step.value {
            return Err(CoreError::TraceValueMismatch {
                step: idx + 1,
                recorded: step.value.to_string(),
                actual: value.to_string(),
            });
        }
        if let Some(profile) = profile {
            if !profile.admits(idx, &value) {
                return Err(CoreError::PrefixViolation {
                    step: idx + 1,
                    offline: value.to_string(),
                    bound: profile.values[idx].to_string(),
                });
            }
        }
    }
    let final_value = state.objective();
    if final_value != trace.final_value {
        return Err(CoreError::TraceValueMismatch {
            step: trace.len(),
            recorded: trace.final_value.to_string(),
            actual: final_value.to_string(),
        });
    }
    Ok(final_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    fn jobs(sizes: &[(i64, i64)]) -> Vec<Request> {
        sizes.iter().map(|&(n, d)| Request::Job(rat(n, d))).collect()
    }

    fn items(sizes: &[(i64, i64)]) -> Vec<Request> {
        sizes.iter().map(|&(n, d)| Request::Item(rat(n, d))).collect()
    }

    #[test]
    fn unconstrained_makespan_example() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq = jobs(&[(2, 1), (1, 1), (1, 1), (2, 1)]);
        let result = solve_unconstrained(&inst, &seq, &SearchConfig::unlimited()).unwrap();
        assert_eq!(result.status, Status::Complete);
        assert_eq!(result.value, Some(Rat::int(2)));
    }

    #[test]
    fn empty_sequence_returns_empty_state_objective() {
        let inst = ProblemInstance::BinCovering;
        let result = solve_unconstrained(&inst, &[], &SearchConfig::unlimited()).unwrap();
        assert_eq!(result.status, Status::Complete);
        assert_eq!(result.value, Some(Rat::zero()));
        assert!(result.witness.unwrap().is_empty());
    }

    #[test]
    fn unconstrained_dual_packing_fits_all_halves() {
        let inst = ProblemInstance::DualBinPacking { n: 2 };
        let seq = items(&[(1, 2), (1, 2), (1, 2), (1, 2)]);
        let result = solve_unconstrained(&inst, &seq, &SearchConfig::unlimited()).unwrap();
        assert_eq!(result.value, Some(Rat::int(4)));
    }

    #[test]
    fn bounded_makespan_respects_greedy_profile() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq = jobs(&[(2, 1), (1, 1), (1, 1), (2, 1)]);
        let profile = PrefixProfile {
            direction: Direction::Min,
            values: vec![Rat::int(2), Rat::int(2), Rat::int(2), Rat::int(3)],
        };
        let result = solve_bounded(&inst, &seq, &profile, &SearchConfig::unlimited()).unwrap();
        assert_eq!(result.status, Status::Complete);
        assert_eq!(result.value, Some(Rat::int(2)));
        // The witness is legal and prefix-dominant by construction.
        let witness = result.witness.unwrap();
        assert_eq!(
            check_witness(&inst, &seq, Some(&profile), &witness).unwrap(),
            Rat::int(2)
        );
    }

    #[test]
    fn bounded_santa_single_job_is_zero() {
        let inst = ProblemInstance::santa_identical(2);
        let seq = jobs(&[(1, 1)]);
        let profile = PrefixProfile {
            direction: Direction::Max,
            values: vec![Rat::zero()],
        };
        let result = solve_bounded(&inst, &seq, &profile, &SearchConfig::unlimited()).unwrap();
        assert_eq!(result.value, Some(Rat::zero()));
    }

    #[test]
    fn enumeration_examples() {
        let inst = ProblemInstance::BinPacking;
        let state = State::BinPacking(crate::packing::BinState {
            loads: vec![rat(2, 3), rat(5, 12)],
            accepted: 0,
            seen: 0,
        });
        assert_eq!(
            enumerate_decisions(&inst, &state, &Request::Item(rat(1, 4))),
            vec![
                Decision::AssignBin(0),
                Decision::AssignBin(1),
                Decision::OpenNewBin
            ]
        );

        let inst = ProblemInstance::makespan_identical(3);
        let mut state = State::initial(&inst);
        state.apply(&Request::Job(Rat::one()), &Decision::AssignMachine(0)).unwrap();
        state.apply(&Request::Job(Rat::one()), &Decision::AssignMachine(1)).unwrap();
        assert_eq!(
            enumerate_decisions(&inst, &state, &Request::Job(Rat::one())),
            vec![Decision::AssignMachine(0), Decision::AssignMachine(2)]
        );

        let inst = ProblemInstance::SeatReservation { k: 4, seats: 2 };
        let mut state = State::initial(&inst);
        state.apply(&Request::Interval(1, 2), &Decision::AssignSeat(0)).unwrap();
        assert_eq!(
            enumerate_decisions(&inst, &state, &Request::Interval(1, 3)),
            vec![Decision::AssignSeat(1), Decision::Reject]
        );
    }

    #[test]
    fn check_witness_flags_overlap() {
        let inst = ProblemInstance::SeatReservation { k: 4, seats: 1 };
        let seq = vec![Request::Interval(1, 3), Request::Interval(2, 4)];
        let trace = DecisionTrace {
            steps: vec![
                TraceStep { decision: Decision::AssignSeat(0), value: Rat::int(1) },
                TraceStep { decision: Decision::AssignSeat(0), value: Rat::int(2) },
            ],
            final_value: Rat::int(2),
        };
        let err = check_witness(&inst, &seq, None, &trace).unwrap_err();
        assert!(matches!(err, CoreError::IllegalDecision { step: 2, .. }));
    }

    #[test]
    fn check_witness_flags_prefix_violation() {
        // Greedy on two identical machines spreads two unit jobs: profile
        // (0, 1). A witness stacking both on one machine is 0 at step 2.
        let inst = ProblemInstance::santa_identical(2);
        let seq = jobs(&[(1, 1), (1, 1)]);
        let profile = PrefixProfile {
            direction: Direction::Max,
            values: vec![Rat::zero(), Rat::one()],
        };
        let trace = DecisionTrace {
            steps: vec![
                TraceStep { decision: Decision::AssignMachine(0), value: Rat::zero() },
                TraceStep { decision: Decision::AssignMachine(0), value: Rat::zero() },
            ],
            final_value: Rat::zero(),
        };
        let err = check_witness(&inst, &seq, Some(&profile), &trace).unwrap_err();
        assert!(matches!(err, CoreError::PrefixViolation { step: 2, .. }));
    }

    #[test]
    fn bounded_never_beats_unconstrained() {
        let inst = ProblemInstance::makespan_identical(2);
        let seq = jobs(&[(1, 1), (3, 4), (1, 2), (1, 4)]);
        let config = SearchConfig::unlimited();
        let opt = solve_unconstrained(&inst, &seq, &config).unwrap();
        // Worst reasonable profile: everything on one machine.
        let mut running = Rat::zero();
        let values: Vec<Rat> = seq
            .iter()
            .map(|r| {
                running += r.size().unwrap();
                running.clone()
            })
            .collect();
        let last = values.last().unwrap().clone();
        let profile = PrefixProfile { direction: Direction::Min, values };
        let bounded = solve_bounded(&inst, &seq, &profile, &config).unwrap();
        let opt_v = opt.require_complete().unwrap();
        let bounded_v = bounded.require_complete().unwrap();
        assert!(opt_v <= bounded_v);
        assert!(*bounded_v <= last);
    }

    #[test]
    fn bounded_with_own_optimal_profile_matches_unconstrained() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq = jobs(&[(2, 1), (1, 1), (1, 1), (2, 1)]);
        let config = SearchConfig::unlimited();
        let opt = solve_unconstrained(&inst, &seq, &config).unwrap();
        let witness = opt.witness.clone().unwrap();
        let profile = crate::core::trace::prefix_profile(&witness, Direction::Min);
        let bounded = solve_bounded(&inst, &seq, &profile, &config).unwrap();
        assert_eq!(bounded.value, opt.value);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq = jobs(&[(2, 1), (1, 1), (1, 1), (2, 1)]);
        let config = SearchConfig {
            node_budget: Some(3),
            canonicalize: true,
            memoize: true,
        };
        let result = solve_unconstrained(&inst, &seq, &config).unwrap();
        assert_eq!(result.status, Status::BudgetExhausted);
        assert!(result.require_complete().is_err());
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Two identical machines, two equal jobs: spreading is the unique
        // optimum, and the canonically first optimal start uses machine 0.
        let inst = ProblemInstance::makespan_identical(2);
        let seq = jobs(&[(1, 1), (1, 1)]);
        let result = solve_unconstrained(&inst, &seq, &SearchConfig::unlimited()).unwrap();
        let witness = result.witness.unwrap();
        let decisions: Vec<Decision> = witness.decisions().cloned().collect();
        assert_eq!(
            decisions,
            vec![Decision::AssignMachine(0), Decision::AssignMachine(1)]
        );
    }
}
