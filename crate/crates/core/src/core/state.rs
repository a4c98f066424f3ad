//! The unified solution state shared by the online execution loop, the
//! offline oracle, and witness replay.

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::graphs::MatchState;
use crate::packing::{accepted_count, bins_used, covered_bins, BinState};
use crate::scheduling::{makespan, min_load, SchedState};
use crate::seatres::SeatState;

/// Partial solution state for any of the problem families. Legality of every
/// transition is enforced in [`State::apply`], so the same code path backs
/// online runs, offline search, and witness checking.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Makespan(SchedState),
    Santa(SchedState),
    BinPacking(BinState),
    BinCovering(BinState),
    DualBinPacking(BinState),
    SeatReservation(SeatState),
    Matching(MatchState),
}

impl State {
    pub fn initial(instance: &ProblemInstance) -> State {
        match instance {
            ProblemInstance::Makespan { speeds } => State::Makespan(SchedState::new(speeds.clone())),
            ProblemInstance::Santa { speeds } => State::Santa(SchedState::new(speeds.clone())),
            ProblemInstance::BinPacking => State::BinPacking(BinState::open_ended()),
            ProblemInstance::BinCovering => State::BinCovering(BinState::open_ended()),
            ProblemInstance::DualBinPacking { n } => State::DualBinPacking(BinState::dual(*n)),
            ProblemInstance::SeatReservation { k, seats } => {
                State::SeatReservation(SeatState::new(*k, *seats))
            }
            ProblemInstance::Matching => State::Matching(MatchState::new()),
        }
    }

    /// The problem's objective applied to this (possibly partial) state.
    ///
    /// Makespan: max completion time (0 if empty). Santa: min completion
    /// time (0 while a machine is empty). Bin packing: open bins. Covering:
    /// bins with total at least 1. Dual packing and seat reservation:
    /// accepted count. Matching: total accepted weight.
    pub fn objective(&self) -> Rat {
        match self {
            State::Makespan(s) => makespan(s),
            State::Santa(s) => min_load(s),
            State::BinPacking(s) => bins_used(s),
            State::BinCovering(s) => covered_bins(s),
            State::DualBinPacking(s) => accepted_count(s),
            State::SeatReservation(s) => Rat::int(s.accepted as i64),
            State::Matching(s) => s.total_weight.clone(),
        }
    }

    /// Applies one decision for one request, checking legality.
    pub fn apply(&mut self, request: &Request, decision: &Decision) -> Result<(), CoreError> {
        let illegal = |decision: &Decision, reason: &str| CoreError::IllegalDecision {
            step: 0, // callers rewrite the step index
            decision: decision.clone(),
            reason: reason.to_string(),
        };
        match (self, request) {
            (State::Makespan(s), Request::Job(size)) | (State::Santa(s), Request::Job(size)) => {
                match decision {
                    Decision::AssignMachine(i) if *i < s.machine_count() => {
                        s.add(*i, size);
                        Ok(())
                    }
                    Decision::AssignMachine(_) => {
                        Err(illegal(decision, "machine index out of bounds"))
                    }
                    _ => Err(illegal(decision, "jobs must be assigned to a machine")),
                }
            }
            (State::BinPacking(s), Request::Item(size)) => match decision {
                Decision::AssignBin(i) if *i < s.loads.len() => {
                    if !s.fits(*i, size) {
                        return Err(illegal(decision, "item does not fit in that bin"));
                    }
                    s.loads[*i] += size;
                    Ok(())
                }
                Decision::AssignBin(_) => Err(illegal(decision, "bin index out of bounds")),
                Decision::OpenNewBin => {
                    s.loads.push(size.clone());
                    Ok(())
                }
                _ => Err(illegal(decision, "items must be packed or open a bin")),
            },
            (State::BinCovering(s), Request::Item(size)) => match decision {
                Decision::AssignBin(i) if *i < s.loads.len() => {
                    s.loads[*i] += size;
                    Ok(())
                }
                Decision::AssignBin(_) => Err(illegal(decision, "bin index out of bounds")),
                Decision::OpenNewBin => {
                    s.loads.push(size.clone());
                    Ok(())
                }
                _ => Err(illegal(decision, "items must be packed or open a bin")),
            },
            (State::DualBinPacking(s), Request::Item(size)) => {
                s.seen += 1;
                match decision {
                    Decision::AssignBin(i) if *i < s.loads.len() => {
                        if !s.fits(*i, size) {
                            return Err(illegal(decision, "item does not fit in that bin"));
                        }
                        s.loads[*i] += size;
                        s.accepted += 1;
                        Ok(())
                    }
                    Decision::AssignBin(_) => Err(illegal(decision, "bin index out of bounds")),
                    Decision::Reject => Ok(()),
                    _ => Err(illegal(decision, "items must be packed in the n bins or rejected")),
                }
            }
            (State::SeatReservation(s), Request::Interval(a, b)) => match decision {
                Decision::AssignSeat(i) if *i < s.seats.len() => {
                    if !s.fits(*i, *a, *b) {
                        return Err(illegal(decision, "interval overlaps that seat"));
                    }
                    s.place(*i, *a, *b);
                    Ok(())
                }
                Decision::AssignSeat(_) => Err(illegal(decision, "seat index out of bounds")),
                Decision::Reject => Ok(()),
                _ => Err(illegal(decision, "intervals must be seated or rejected")),
            },
            (State::Matching(s), Request::Edge(u, v, w)) => match decision {
                Decision::AcceptEdge => {
                    if !s.feasible(*u, *v) {
                        return Err(illegal(decision, "an endpoint is already matched"));
                    }
                    s.accept(*u, *v, w.clone());
                    Ok(())
                }
                Decision::RejectEdge => Ok(()),
                _ => Err(illegal(decision, "edges must be accepted or rejected")),
            },
            (state, request) => Err(CoreError::RequestMismatch(format!(
                "request {request:?} does not match state {}",
                state.family_name()
            ))),
        }
    }

    fn family_name(&self) -> &'static str {
        match self {
            State::Makespan(_) => "makespan",
            State::Santa(_) => "santa",
            State::BinPacking(_) => "bin-packing",
            State::BinCovering(_) => "bin-covering",
            State::DualBinPacking(_) => "dual-bin-packing",
            State::SeatReservation(_) => "seat-reservation",
            State::Matching(_) => "matching",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn empty_state_objectives() {
        let cases = [
            (ProblemInstance::makespan_identical(3), Rat::zero()),
            (ProblemInstance::santa_identical(2), Rat::zero()),
            (ProblemInstance::BinPacking, Rat::zero()),
            (ProblemInstance::BinCovering, Rat::zero()),
            (ProblemInstance::DualBinPacking { n: 2 }, Rat::zero()),
            (ProblemInstance::SeatReservation { k: 4, seats: 2 }, Rat::zero()),
            (ProblemInstance::Matching, Rat::zero()),
        ];
        for (inst, want) in cases {
            assert_eq!(State::initial(&inst).objective(), want);
        }
    }

    #[test]
    fn illegal_transitions_are_rejected() {
        let inst = ProblemInstance::BinPacking;
        let mut state = State::initial(&inst);
        state
            .apply(&Request::Item(rat(3, 4)), &Decision::OpenNewBin)
            .unwrap();
        // Does not fit: 3/4 + 1/2 > 1.
        assert!(state
            .apply(&Request::Item(rat(1, 2)), &Decision::AssignBin(0))
            .is_err());
        // Wrong decision kind.
        assert!(state
            .apply(&Request::Item(rat(1, 2)), &Decision::AssignMachine(0))
            .is_err());
        // Wrong request kind.
        assert!(state
            .apply(&Request::Job(rat(1, 2)), &Decision::OpenNewBin)
            .is_err());
    }
}
