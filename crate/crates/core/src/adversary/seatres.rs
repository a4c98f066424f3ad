//! Adaptive adversarial interval sequence for unit-price seat reservation,
//! with the scripted offline strategy from the 11/(k+7) impossibility
//! argument.

use super::Construction;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::trace::DecisionTrace;

/// Adaptive lower bound for fair seat reservation with `seats` seats (a
/// multiple of 4) and k >= 6 stations.
///
/// Phase 1 offers seats/2 copies of [k-3, k-2) and seats/2 copies of
/// [k-1, k). Let r be the number of seats the algorithm doubled up (both
/// interval types on one seat). Phase 2 branches on r:
///   - r >= seats/4 (case 1): seats/2 copies of [k-2, k), then seats/2
///     copies of [k-3, k-1);
///   - r < seats/4 (case 2): seats/2 copies of [k-3, k).
/// Phase 3 (both cases): seats/4 copies of [1, k-2), then 3·seats/4 copies
/// of [1, k-3), then seats/4 copies of [i, i+1) for every station
/// i = 1..k-4.
///
/// The scripted offline player spreads phase 1 to keep all of phase 2
/// (case 1) or pairs phase 1 up to keep the empty half free (case 2),
/// rejects the [1, k-2) batch, and saves seats/4 seats for the single-
/// station tail, ending with 2n + 3n/4 + n(k-4)/4 acceptances in case 1
/// (n = seats) and 3n/2 + 3n/4 + n(k-4)/4 in case 2.
pub struct SeatResLb {
    pub k: u32,
    pub seats: usize,
}

impl SeatResLb {
    pub fn new(k: u32, seats: usize) -> SeatResLb {
        assert!(k >= 6, "needs at least 6 stations");
        assert!(seats >= 4 && seats % 4 == 0, "needs a multiple of 4 seats");
        SeatResLb { k, seats }
    }

    fn phase1(&self) -> Vec<Request> {
        let k = self.k;
        let half = self.seats / 2;
        let mut seq = Vec::with_capacity(self.seats);
        seq.extend(std::iter::repeat(Request::Interval(k - 3, k - 2)).take(half));
        seq.extend(std::iter::repeat(Request::Interval(k - 1, k)).take(half));
        seq
    }

    /// Number of seats the algorithm doubled up in phase 1.
    fn doubled_seats(&self, history: &[(Request, Decision)]) -> usize {
        let mut per_seat = vec![0usize; self.seats];
        for (_, decision) in history.iter().take(self.seats) {
            if let Decision::AssignSeat(i) = decision {
                per_seat[*i] += 1;
            }
        }
        per_seat.iter().filter(|&&c| c >= 2).count()
    }

    fn case_one(&self, history: &[(Request, Decision)]) -> bool {
        self.doubled_seats(history) >= self.seats / 4
    }

    /// Phase 2 requests for the branch taken.
    fn phase2(&self, case_one: bool) -> Vec<Request> {
        let k = self.k;
        let half = self.seats / 2;
        let mut seq = Vec::new();
        if case_one {
            seq.extend(std::iter::repeat(Request::Interval(k - 2, k)).take(half));
            seq.extend(std::iter::repeat(Request::Interval(k - 3, k - 1)).take(half));
        } else {
            seq.extend(std::iter::repeat(Request::Interval(k - 3, k)).take(half));
        }
        seq
    }

    /// Phase 3 requests (identical in both cases).
    fn phase3(&self) -> Vec<Request> {
        let k = self.k;
        let n = self.seats;
        let mut seq = Vec::new();
        seq.extend(std::iter::repeat(Request::Interval(1, k - 2)).take(n / 4));
        seq.extend(std::iter::repeat(Request::Interval(1, k - 3)).take(3 * n / 4));
        for i in 1..=k - 4 {
            seq.extend(std::iter::repeat(Request::Interval(i, i + 1)).take(n / 4));
        }
        seq
    }
}

impl Construction for SeatResLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::SeatReservation {
            k: self.k,
            seats: self.seats,
        }
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        let t = history.len();
        let n = self.seats;
        if t < n {
            return Some(self.phase1()[t].clone());
        }
        let phase2 = self.phase2(self.case_one(history));
        if t < n + phase2.len() {
            return Some(phase2[t - n].clone());
        }
        self.phase3().get(t - n - phase2.len()).cloned()
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let k = self.k;
        let n = self.seats;
        let half = n / 2;
        // Infer the branch from the request right after phase 1.
        let case_one = matches!(sequence.get(n), Some(Request::Interval(a, b)) if (*a, *b) == (k - 2, k));
        let mut decisions = Vec::with_capacity(sequence.len());
        if case_one {
            // Spread phase 1 over all seats, then accept all of phase 2 on
            // the complementary halves.
            for j in 0..half {
                decisions.push(Decision::AssignSeat(j));
            }
            for j in 0..half {
                decisions.push(Decision::AssignSeat(half + j));
            }
            for j in 0..half {
                decisions.push(Decision::AssignSeat(j));
            }
            for j in 0..half {
                decisions.push(Decision::AssignSeat(half + j));
            }
        } else {
            // Pair phase 1 on the first half of the seats, keeping the
            // second half fully empty for phase 2.
            for j in 0..half {
                decisions.push(Decision::AssignSeat(j));
            }
            for j in 0..half {
                decisions.push(Decision::AssignSeat(j));
            }
            for j in 0..half {
                decisions.push(Decision::AssignSeat(half + j));
            }
        }
        // Phase 3: give up the wide [1, k-2) batch, take every [1, k-3) on
        // the first 3n/4 seats, and keep the last n/4 seats for the
        // single-station tail (one copy of each station per seat).
        for _ in 0..n / 4 {
            decisions.push(Decision::Reject);
        }
        for j in 0..3 * n / 4 {
            decisions.push(Decision::AssignSeat(j));
        }
        for _ in 1..=k - 4 {
            for c in 0..n / 4 {
                decisions.push(Decision::AssignSeat(3 * n / 4 + c));
            }
        }
        if decisions.len() != sequence.len() {
            return None;
        }
        crate::core::run::trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::play;
    use crate::core::rational::Rat;
    use crate::core::run::{make_policy, AlgorithmId};
    use crate::core::trace::prefix_profile;
    use crate::oracle::check_witness;
    use crate::seatres::fits_somewhere;

    #[test]
    fn first_fit_lands_in_case_one_with_known_counts() {
        for (k, seats, alg_want, opt_want) in [(12u32, 8usize, 20i64, 38i64), (16, 8, 20, 46)] {
            let construction = SeatResLb::new(k, seats);
            let instance = construction.instance();
            let mut policy = make_policy(AlgorithmId::SeatFirstFit, &instance).unwrap();
            let playout = play(&construction, policy.as_mut()).unwrap();
            assert_eq!(playout.alg_trace.final_value, Rat::int(alg_want));

            let witness = playout.witness.expect("bundled witness");
            let profile = prefix_profile(&playout.alg_trace, instance.direction());
            let opt =
                check_witness(&instance, &playout.sequence, Some(&profile), &witness).unwrap();
            assert_eq!(opt, Rat::int(opt_want));

            // Ratio at most 11/(k+7).
            let ratio = playout.alg_trace.final_value.clone() / opt;
            let bound = Rat::new(11, k as i64 + 7).unwrap();
            assert!(ratio <= bound);
        }
    }

    #[test]
    fn online_player_is_fair_throughout() {
        let construction = SeatResLb::new(12, 8);
        let instance = construction.instance();
        let mut policy = make_policy(AlgorithmId::SeatFirstFit, &instance).unwrap();
        let playout = play(&construction, policy.as_mut()).unwrap();
        // Replay: a rejection is only allowed when nothing fits.
        let mut state = crate::seatres::SeatState::new(12, 8);
        for (request, step) in playout.sequence.iter().zip(playout.alg_trace.steps.iter()) {
            match step.decision {
                Decision::AssignSeat(i) => {
                    if let Request::Interval(a, b) = request {
                        state.place(i, *a, *b);
                    }
                }
                Decision::Reject => assert!(!fits_somewhere(&state, request)),
                _ => panic!("unexpected decision"),
            }
        }
    }
}
