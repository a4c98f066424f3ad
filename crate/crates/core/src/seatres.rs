//! Unit-price seat reservation: k stations, a fixed number of seats, and
//! fair online seat-assignment policies.

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};

/// Per-seat occupancy: disjoint half-open station intervals [a, b), kept
/// sorted by start station.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeatState {
    pub k: u32,
    pub seats: Vec<Vec<(u32, u32)>>,
    pub accepted: u64,
}

impl SeatState {
    pub fn new(k: u32, seat_count: usize) -> SeatState {
        SeatState {
            k,
            seats: vec![Vec::new(); seat_count],
            accepted: 0,
        }
    }

    /// True when [a, b) overlaps nothing on seat `i`. Half-open intervals
    /// make adjacency disjoint.
    pub fn fits(&self, i: usize, a: u32, b: u32) -> bool {
        self.seats[i].iter().all(|&(c, d)| b <= c || d <= a)
    }

    pub fn place(&mut self, i: usize, a: u32, b: u32) {
        let pos = self.seats[i].partition_point(|&(c, _)| c < a);
        self.seats[i].insert(pos, (a, b));
        self.accepted += 1;
    }

    /// Total occupied station length on seat `i`.
    pub fn occupied_len(&self, i: usize) -> u32 {
        self.seats[i].iter().map(|&(a, b)| b - a).sum()
    }
}

/// True iff the interval overlaps nothing on some seat.
pub fn fits_somewhere(state: &SeatState, request: &Request) -> bool {
    match request {
        Request::Interval(a, b) => (0..state.seats.len()).any(|i| state.fits(i, *a, *b)),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeatPolicy {
    /// Lowest-index seat where the interval fits.
    FirstFit,
    /// Among fitting seats, one minimizing the empty station length left on
    /// the seat after placement (equivalently: maximal occupancy), lowest
    /// index on ties.
    BestFit,
}

/// One step of a fair seat policy: Reject only when no seat fits.
pub fn seat_step(
    policy: SeatPolicy,
    instance: &ProblemInstance,
    state: &SeatState,
    request: &Request,
) -> Result<Decision, CoreError> {
    if !matches!(instance, ProblemInstance::SeatReservation { .. }) {
        return Err(CoreError::PolicyMismatch {
            algorithm: format!("{policy:?}"),
            reason: "requires a seat reservation instance".into(),
        });
    }
    let (a, b) = match request {
        Request::Interval(a, b) => (*a, *b),
        _ => {
            return Err(CoreError::RequestMismatch(format!(
                "expected an interval, got {request:?}"
            )))
        }
    };
    let seat = match policy {
        SeatPolicy::FirstFit => (0..state.seats.len()).find(|&i| state.fits(i, a, b)),
        SeatPolicy::BestFit => {
            let mut best: Option<usize> = None;
            for i in 0..state.seats.len() {
                if state.fits(i, a, b) {
                    let better = match best {
                        None => true,
                        Some(j) => state.occupied_len(i) > state.occupied_len(j),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            best
        }
    };
    Ok(seat.map(Decision::AssignSeat).unwrap_or(Decision::Reject))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_disjoint_for_half_open_intervals() {
        let inst = ProblemInstance::SeatReservation { k: 4, seats: 2 };
        let mut state = SeatState::new(4, 2);
        state.place(0, 1, 2);
        let d = seat_step(SeatPolicy::FirstFit, &inst, &state, &Request::Interval(2, 4)).unwrap();
        assert_eq!(d, Decision::AssignSeat(0));
    }

    #[test]
    fn best_fit_minimizes_leftover_empty_length() {
        let inst = ProblemInstance::SeatReservation { k: 6, seats: 2 };
        let mut state = SeatState::new(6, 2);
        state.place(0, 1, 2);
        state.place(1, 1, 4);
        let d = seat_step(SeatPolicy::BestFit, &inst, &state, &Request::Interval(4, 6)).unwrap();
        assert_eq!(d, Decision::AssignSeat(1));
    }

    #[test]
    fn rejects_only_when_nothing_fits() {
        let inst = ProblemInstance::SeatReservation { k: 4, seats: 2 };
        let mut state = SeatState::new(4, 2);
        state.place(0, 2, 3);
        state.place(1, 2, 3);
        let req = Request::Interval(1, 4);
        assert!(!fits_somewhere(&state, &req));
        let d = seat_step(SeatPolicy::FirstFit, &inst, &state, &req).unwrap();
        assert_eq!(d, Decision::Reject);
        let d = seat_step(SeatPolicy::BestFit, &inst, &state, &req).unwrap();
        assert_eq!(d, Decision::Reject);
    }

    #[test]
    fn empty_state_fits_anything() {
        let state = SeatState::new(10, 1);
        assert!(fits_somewhere(&state, &Request::Interval(3, 7)));
    }

    #[test]
    fn full_overlap_blocks_single_seat() {
        let mut state = SeatState::new(10, 1);
        state.place(0, 1, 10);
        assert!(!fits_somewhere(&state, &Request::Interval(2, 3)));
    }
}
