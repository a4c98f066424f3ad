//! Independent reference optimum: plain exhaustive enumeration of every
//! legal offline decision sequence, with no symmetry reduction, no
//! memoization, and no pruning. Exists solely to cross-check the
//! branch-and-bound engine on small inputs.

use crate::core::problem::{Decision, Direction, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::state::State;
use crate::core::trace::PrefixProfile;

/// Every decision variant that could possibly apply, with no filtering
/// beyond the decision shape; legality is left to `State::apply`.
fn candidate_decisions(state: &State, request: &Request) -> Vec<Decision> {
    match (state, request) {
        (State::Makespan(s), Request::Job(_)) | (State::Santa(s), Request::Job(_)) => {
            (0..s.machine_count()).map(Decision::AssignMachine).collect()
        }
        (State::BinPacking(s), Request::Item(_)) | (State::BinCovering(s), Request::Item(_)) => {
            let mut out: Vec<Decision> = (0..s.loads.len()).map(Decision::AssignBin).collect();
            out.push(Decision::OpenNewBin);
            out
        }
        (State::DualBinPacking(s), Request::Item(_)) => {
            let mut out: Vec<Decision> = (0..s.loads.len()).map(Decision::AssignBin).collect();
            out.push(Decision::Reject);
            out
        }
        (State::SeatReservation(s), Request::Interval(..)) => {
            let mut out: Vec<Decision> = (0..s.seats.len()).map(Decision::AssignSeat).collect();
            out.push(Decision::Reject);
            out
        }
        (State::Matching(_), Request::Edge(..)) => {
            vec![Decision::AcceptEdge, Decision::RejectEdge]
        }
        _ => Vec::new(),
    }
}

fn recurse(
    direction: Direction,
    sequence: &[Request],
    profile: Option<&PrefixProfile>,
    idx: usize,
    state: &State,
) -> Option<Rat> {
    if idx == sequence.len() {
        return Some(state.objective());
    }
    let mut best: Option<Rat> = None;
    for decision in candidate_decisions(state, &sequence[idx]) {
        let mut child = state.clone();
        if child.apply(&sequence[idx], &decision).is_err() {
            continue;
        }
        if let Some(profile) = profile {
            if !profile.admits(idx, &child.objective()) {
                continue;
            }
        }
        if let Some(value) = recurse(direction, sequence, profile, idx + 1, &child) {
            let take = match &best {
                None => true,
                Some(b) => match direction {
                    Direction::Min => value < *b,
                    Direction::Max => value > *b,
                },
            };
            if take {
                best = Some(value);
            }
        }
    }
    best
}

/// Exhaustive optimum; `None` when no feasible decision sequence exists.
pub fn naive_best(
    instance: &ProblemInstance,
    sequence: &[Request],
    profile: Option<&PrefixProfile>,
) -> Option<Rat> {
    let state = State::initial(instance);
    recurse(instance.direction(), sequence, profile, 0, &state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn matches_hand_computed_optima() {
        let inst = ProblemInstance::makespan_identical(3);
        let seq: Vec<Request> = [(2i64, 1i64), (1, 1), (1, 1), (2, 1)]
            .iter()
            .map(|&(n, d)| Request::Job(rat(n, d)))
            .collect();
        assert_eq!(naive_best(&inst, &seq, None), Some(Rat::int(2)));

        let inst = ProblemInstance::DualBinPacking { n: 2 };
        let seq: Vec<Request> = (0..4).map(|_| Request::Item(rat(1, 2))).collect();
        assert_eq!(naive_best(&inst, &seq, None), Some(Rat::int(4)));
    }
}
