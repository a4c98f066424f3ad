//! Adversarial job sequences for the scheduling lower bounds, each with a
//! scripted offline witness.

use super::Construction;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::run::trace_from_decisions;
use crate::core::trace::DecisionTrace;
use crate::scheduling::SchedState;

fn job(n: i64, d: i64) -> Request {
    Request::Job(Rat::new(n, d).expect("nonzero denominator"))
}

/// Replays the scheduling decisions in `history` to recover machine loads.
fn replay_loads(instance: &ProblemInstance, history: &[(Request, Decision)]) -> SchedState {
    let speeds = instance.speeds().expect("scheduling instance").to_vec();
    let mut state = SchedState::new(speeds);
    for (request, decision) in history {
        if let (Request::Job(size), Decision::AssignMachine(i)) = (request, decision) {
            state.add(*i, size);
        }
    }
    state
}

/// Static greedy lower bound on m identical machines: a job of size m-1,
/// then (m-1)(m-2) unit jobs, then another job of size m-1. Greedy ends at
/// makespan 2m-3; the witness keeps the first big job alone, stacks the unit
/// jobs onto m-2 machines (m-1 each), and drops the last big job on the one
/// machine left empty, for a final makespan of m-1.
pub struct MakespanGreedyLb {
    pub m: usize,
}

impl MakespanGreedyLb {
    pub fn new(m: usize) -> MakespanGreedyLb {
        assert!(m >= 3, "needs at least 3 machines");
        MakespanGreedyLb { m }
    }

    fn sequence(&self) -> Vec<Request> {
        let m = self.m as i64;
        let mut seq = vec![job(m - 1, 1)];
        seq.extend(std::iter::repeat(job(1, 1)).take(((m - 1) * (m - 2)) as usize));
        seq.push(job(m - 1, 1));
        seq
    }
}

impl Construction for MakespanGreedyLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::makespan_identical(self.m)
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        self.sequence().get(history.len()).cloned()
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let m = self.m;
        let per_machine = m - 1;
        let mut decisions = vec![Decision::AssignMachine(0)];
        for unit in 0..(m - 1) * (m - 2) {
            decisions.push(Decision::AssignMachine(1 + unit / per_machine));
        }
        decisions.push(Decision::AssignMachine(m - 1));
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Adaptive 4/3 lower bound on m >= 3 identical machines. Emits m-2 jobs of
/// size 3 and two of size 1, stopping as soon as the algorithm's makespan
/// reaches 4; otherwise extends with two jobs of size 2 (if the algorithm
/// put both unit jobs on one machine) or one job of size 3 (if it split
/// them). The witness reaches makespan 3 in every branch.
pub struct MakespanAdaptiveLb {
    pub m: usize,
}

impl MakespanAdaptiveLb {
    pub fn new(m: usize) -> MakespanAdaptiveLb {
        assert!(m >= 3, "needs at least 3 machines");
        MakespanAdaptiveLb { m }
    }

    /// Machines the two unit jobs went to, if both have been served.
    fn unit_machines(&self, history: &[(Request, Decision)]) -> Option<(usize, usize)> {
        let m = self.m;
        if history.len() < m {
            return None;
        }
        let pick = |idx: usize| match history[idx].1 {
            Decision::AssignMachine(i) => i,
            _ => unreachable!("scheduling decisions only"),
        };
        Some((pick(m - 2), pick(m - 1)))
    }
}

impl Construction for MakespanAdaptiveLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::makespan_identical(self.m)
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        let m = self.m;
        let t = history.len();
        if t > 0 {
            let state = replay_loads(&self.instance(), history);
            if crate::scheduling::makespan(&state) >= Rat::int(4) {
                return None;
            }
        }
        if t < m - 2 {
            return Some(job(3, 1));
        }
        if t < m {
            return Some(job(1, 1));
        }
        let (u1, u2) = self.unit_machines(history)?;
        if u1 == u2 {
            // Common machine: two jobs of size 2 force a load of 4 somewhere
            // (every machine already carries 3, or the unit pair plus a 2).
            if t < m + 2 {
                return Some(job(2, 1));
            }
        } else if t < m + 1 {
            // Split units: one more 3 lands on a load of at least 1.
            return Some(job(3, 1));
        }
        None
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let m = self.m;
        // The witness parks the 3s on machines 0..m-3 and keeps machines
        // m-2, m-1 for the rest. If a size-3 job follows the units, both
        // units share machine m-2 (freeing m-1 for it); otherwise they
        // split, leaving room for one size-2 job on each.
        let three = Rat::int(3);
        let stack_units = sequence[m.min(sequence.len())..]
            .iter()
            .any(|r| matches!(r, Request::Job(s) if *s == three));
        let mut decisions = Vec::with_capacity(sequence.len());
        let mut units_seen = 0;
        let mut twos_seen = 0;
        let mut threes_seen = 0;
        for request in sequence {
            let size = match request {
                Request::Job(s) => s,
                _ => return None,
            };
            let machine = if *size == Rat::int(3) {
                threes_seen += 1;
                if threes_seen <= m - 2 {
                    threes_seen - 1
                } else {
                    m - 1
                }
            } else if *size == Rat::one() {
                units_seen += 1;
                if stack_units {
                    m - 2
                } else if units_seen == 1 {
                    m - 2
                } else {
                    m - 1
                }
            } else {
                twos_seen += 1;
                if twos_seen == 1 {
                    m - 2
                } else {
                    m - 1
                }
            };
            decisions.push(Decision::AssignMachine(machine));
        }
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Three-job counterexample to greedy with fast-machine tie-breaking on two
/// related machines with speeds (s, 1): jobs s-1, 1, s+1. At s = 2 the
/// tie-breaking variant ends at makespan 5/2 while the witness (big jobs on
/// the fast machine, the unit job on the slow one) ends at 2.
pub struct GreedyFastTiesCounter {
    pub s: Rat,
}

impl GreedyFastTiesCounter {
    pub fn new(s: Rat) -> GreedyFastTiesCounter {
        assert!(s > Rat::one(), "needs a speed ratio above 1");
        GreedyFastTiesCounter { s }
    }
}

impl Construction for GreedyFastTiesCounter {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::makespan_related(self.s.clone())
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        match history.len() {
            0 => Some(Request::Job(&self.s - &Rat::one())),
            1 => Some(Request::Job(Rat::one())),
            2 => Some(Request::Job(&self.s + &Rat::one())),
            _ => None,
        }
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let decisions = [
            Decision::AssignMachine(0),
            Decision::AssignMachine(1),
            Decision::AssignMachine(0),
        ];
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Two-job lower bound for the fast-machine-only policy on speeds (s, 1):
/// jobs s^2 and s. The policy ends at makespan s+1; the witness puts the
/// second job on the slow machine and ends at s.
pub struct FastLb {
    pub s: Rat,
}

impl FastLb {
    pub fn new(s: Rat) -> FastLb {
        assert!(s > Rat::one(), "needs a speed ratio above 1");
        FastLb { s }
    }
}

impl Construction for FastLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::makespan_related(self.s.clone())
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        match history.len() {
            0 => Some(Request::Job(&self.s * &self.s)),
            1 => Some(Request::Job(self.s.clone())),
            _ => None,
        }
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let decisions = [Decision::AssignMachine(0), Decision::AssignMachine(1)];
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Static six-job counterexample to the 4/3-threshold policy on three
/// identical machines: ⟨3/4, 1/4, 5/12, 1/6, 7/12, 5/6⟩. The policy ends at
/// makespan 17/12; the witness packs the jobs into three perfect unit loads.
pub struct ThresholdCounter;

impl ThresholdCounter {
    fn sequence(&self) -> Vec<Request> {
        vec![
            job(3, 4),
            job(1, 4),
            job(5, 12),
            job(1, 6),
            job(7, 12),
            job(5, 6),
        ]
    }
}

impl Construction for ThresholdCounter {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::makespan_identical(3)
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        self.sequence().get(history.len()).cloned()
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        // 3/4 + 1/4 | 5/12 + 7/12 | 1/6 + 5/6: three machines at exactly 1.
        let decisions = [
            Decision::AssignMachine(0),
            Decision::AssignMachine(0),
            Decision::AssignMachine(1),
            Decision::AssignMachine(2),
            Decision::AssignMachine(1),
            Decision::AssignMachine(2),
        ];
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Adaptive two-job impossibility for Santa Claus on two related machines
/// with speeds (s, 1): a unit job, then a job of size s if the algorithm
/// used the fast machine, else a job of size 1/s. Any algorithm ends at a
/// minimum load of at most 1/s times the witness's.
pub struct SantaRelatedAdaptive {
    pub s: Rat,
}

impl SantaRelatedAdaptive {
    pub fn new(s: Rat) -> SantaRelatedAdaptive {
        assert!(s > Rat::one(), "needs a speed ratio above 1");
        SantaRelatedAdaptive { s }
    }
}

impl Construction for SantaRelatedAdaptive {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::santa_related(self.s.clone())
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        match history.len() {
            0 => Some(Request::Job(Rat::one())),
            1 => match history[0].1 {
                Decision::AssignMachine(0) => Some(Request::Job(self.s.clone())),
                _ => Some(Request::Job(Rat::one().checked_div(&self.s).ok()?)),
            },
            _ => None,
        }
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        // Fast-machine branch (second job s): unit job on the slow machine,
        // s on the fast one — both complete at 1. Slow-machine branch
        // (second job 1/s): unit job on the fast machine, 1/s on the slow
        // one — both complete at 1/s.
        let second = match sequence.get(1) {
            Some(Request::Job(size)) => size,
            _ => return None,
        };
        let decisions = if *second == self.s {
            [Decision::AssignMachine(1), Decision::AssignMachine(0)]
        } else {
            [Decision::AssignMachine(0), Decision::AssignMachine(1)]
        };
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::play;
    use crate::core::rational::{rat, Rat};
    use crate::core::run::{make_policy, AlgorithmId};
    use crate::core::trace::prefix_profile;
    use crate::oracle::check_witness;

    fn play_and_check(
        construction: &dyn Construction,
        algorithm: AlgorithmId,
    ) -> (Rat, Rat, usize) {
        let instance = construction.instance();
        let mut policy = make_policy(algorithm, &instance).unwrap();
        let playout = play(construction, policy.as_mut()).unwrap();
        let witness = playout.witness.expect("bundled witness");
        let profile = prefix_profile(&playout.alg_trace, instance.direction());
        let opt = check_witness(&instance, &playout.sequence, Some(&profile), &witness).unwrap();
        (
            playout.alg_trace.final_value.clone(),
            opt,
            playout.sequence.len(),
        )
    }

    #[test]
    fn greedy_lb_matches_closed_forms() {
        for m in 3..=6usize {
            let (alg, opt, len) =
                play_and_check(&MakespanGreedyLb::new(m), AlgorithmId::GreedyIdentical);
            assert_eq!(alg, Rat::int(2 * m as i64 - 3));
            assert_eq!(opt, Rat::int(m as i64 - 1));
            assert_eq!(len, (m - 1) * (m - 2) + 2);
        }
    }

    #[test]
    fn adaptive_lb_forces_four_thirds_on_greedy() {
        for m in [3usize, 4] {
            let (alg, opt, _) =
                play_and_check(&MakespanAdaptiveLb::new(m), AlgorithmId::GreedyIdentical);
            assert!(alg >= Rat::int(4));
            assert_eq!(opt, Rat::int(3));
        }
    }

    #[test]
    fn adaptive_lb_forces_four_thirds_on_threshold() {
        for m in [3usize, 4] {
            let (alg, opt, _) =
                play_and_check(&MakespanAdaptiveLb::new(m), AlgorithmId::Threshold43);
            assert!(alg >= Rat::int(4));
            assert_eq!(opt, Rat::int(3));
        }
    }

    #[test]
    fn fastties_counter_at_speed_two() {
        let (alg, opt, _) = play_and_check(
            &GreedyFastTiesCounter::new(rat(2, 1)),
            AlgorithmId::GreedyRelatedFastties,
        );
        assert_eq!(alg, rat(5, 2));
        assert_eq!(opt, Rat::int(2));
    }

    #[test]
    fn fast_lb_ratio_is_s_plus_one_over_s() {
        for (n, d) in [(3i64, 2i64), (2, 1), (5, 2)] {
            let s = rat(n, d);
            let (alg, opt, _) = play_and_check(&FastLb::new(s.clone()), AlgorithmId::Fast);
            assert_eq!(alg, &s + &Rat::one());
            assert_eq!(opt, s);
        }
    }

    #[test]
    fn threshold_counter_reaches_17_12_against_unit_optimum() {
        let (alg, opt, len) = play_and_check(&ThresholdCounter, AlgorithmId::Threshold43);
        assert_eq!(alg, rat(17, 12));
        assert_eq!(opt, Rat::int(1));
        assert_eq!(len, 6);
    }

    #[test]
    fn santa_adaptive_caps_the_ratio_at_one_over_s() {
        for (n, d) in [(3i64, 2i64), (2, 1)] {
            let s = rat(n, d);
            let inv = Rat::one() / s.clone();
            let (alg, opt, len) = play_and_check(
                &SantaRelatedAdaptive::new(s),
                AlgorithmId::SantaLeastLoaded,
            );
            assert_eq!(len, 2);
            assert!(opt.is_positive());
            assert!(alg / opt <= inv);
        }
    }
}
