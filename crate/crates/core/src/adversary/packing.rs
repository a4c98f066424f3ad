//! Adversarial item sequences for bin packing and dual bin packing.

use super::Construction;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::run::trace_from_decisions;
use crate::core::trace::DecisionTrace;

fn item(size: Rat) -> Request {
    Request::Item(size)
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d).expect("nonzero denominator")
}

/// Adaptive 3/2 lower bound for any-fit bin packing (first-fit, best-fit,
/// worst-fit), parameterized by n with ε = 1/(24n).
///
/// Opens with ⟨2/3, 5/12, 1/4⟩ and branches on where the algorithm put the
/// 1/4 item: with the 2/3 item (case 1) the follow-up is ⟨1/3, 1/3, 1/2-nε,
/// 1/2+nε⟩; with the 5/12 item (case 2) it is ⟨7/12⟩. Either way, n-1
/// four-item groups ⟨1/2-iε, 1/2-iε, 1/2+iε, 1/2+iε⟩ for i = n-1..1 follow.
/// Any-fit uses 3 bins per group; the witness pairs each small with a large
/// into 2 full bins per group, ending at 2(n-1) + 3 (case 1) or 2(n-1) + 2
/// (case 2) bins while the algorithm uses 3(n-1) + 4 or 3(n-1) + 3.
pub struct AnyFitLb {
    pub n: usize,
}

impl AnyFitLb {
    pub fn new(n: usize) -> AnyFitLb {
        assert!(n >= 2, "needs n >= 2");
        AnyFitLb { n }
    }

    fn eps(&self) -> Rat {
        rat(1, 24 * self.n as i64)
    }

    /// Bin index each request in `history` went to, by replaying decisions.
    fn bin_of(history: &[(Request, Decision)], idx: usize) -> Option<usize> {
        let mut opened = 0usize;
        let mut assigned = None;
        for (t, (_, decision)) in history.iter().enumerate() {
            let bin = match decision {
                Decision::AssignBin(i) => Some(*i),
                Decision::OpenNewBin => {
                    opened += 1;
                    Some(opened - 1)
                }
                _ => None,
            };
            if t == idx {
                assigned = bin;
            }
        }
        assigned
    }

    /// True when the 1/4 item shares a bin with the 2/3 item (case 1).
    fn case_one(history: &[(Request, Decision)]) -> bool {
        match (Self::bin_of(history, 0), Self::bin_of(history, 2)) {
            (Some(big), Some(quarter)) => big == quarter,
            _ => false,
        }
    }

    /// The four sizes of group j (0-based), i.e. i = n-1-j.
    fn group_sizes(&self, j: usize) -> [Rat; 4] {
        let i = Rat::int((self.n - 1 - j) as i64);
        let half = rat(1, 2);
        let small = &half - &(&i * &self.eps());
        let large = &half + &(&i * &self.eps());
        [small.clone(), small, large.clone(), large]
    }
}

impl Construction for AnyFitLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::BinPacking
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        let t = history.len();
        match t {
            0 => return Some(item(rat(2, 3))),
            1 => return Some(item(rat(5, 12))),
            2 => return Some(item(rat(1, 4))),
            _ => {}
        }
        let n = Rat::int(self.n as i64);
        let half = rat(1, 2);
        let groups_base = if Self::case_one(history) {
            match t {
                3 | 4 => return Some(item(rat(1, 3))),
                5 => return Some(item(&half - &(&n * &self.eps()))),
                6 => return Some(item(&half + &(&n * &self.eps()))),
                _ => {}
            }
            7
        } else {
            if t == 3 {
                return Some(item(rat(7, 12)));
            }
            4
        };
        let offset = t - groups_base;
        let (j, pos) = (offset / 4, offset % 4);
        if j < self.n - 1 {
            Some(item(self.group_sizes(j)[pos].clone()))
        } else {
            None
        }
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        // Infer the branch from the emitted sequence itself.
        let case_one = !matches!(sequence.get(3), Some(Request::Item(s)) if *s == rat(7, 12));
        let mut decisions: Vec<Decision> = if case_one {
            // 2/3+1/3 | 5/12+1/4+1/3 | (1/2-nε)+(1/2+nε)
            vec![
                Decision::OpenNewBin,
                Decision::OpenNewBin,
                Decision::AssignBin(1),
                Decision::AssignBin(0),
                Decision::AssignBin(1),
                Decision::OpenNewBin,
                Decision::AssignBin(2),
            ]
        } else {
            // 2/3+1/4 | 5/12+7/12
            vec![
                Decision::OpenNewBin,
                Decision::OpenNewBin,
                Decision::AssignBin(0),
                Decision::AssignBin(1),
            ]
        };
        let base_bins = if case_one { 3 } else { 2 };
        let groups = (sequence.len() - decisions.len()) / 4;
        for j in 0..groups {
            // Two fresh bins; each takes one small now and one large later.
            decisions.push(Decision::OpenNewBin);
            decisions.push(Decision::OpenNewBin);
            decisions.push(Decision::AssignBin(base_bins + 2 * j));
            decisions.push(Decision::AssignBin(base_bins + 2 * j + 1));
        }
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

/// Lower bound driving the unfair first-fit dual packing policy's ratio to
/// zero, parameterized by n (the bin count) with ε = 1/(24n).
///
/// n rounds of ⟨1-ε, ε, 1/2+ε⟩, then (n-1)(12n-2) items of size ε. The
/// policy accepts exactly two items per round (the 1/2+ε is always over its
/// acceptance quota) and nothing from the tail, ending at 2n. The witness
/// instead keeps only the first 1-ε, pairs each 1/2+ε with an ε, rejects
/// the later 1-ε items, and absorbs the whole tail, ending at
/// 2n + (n-1)(12n-2) acceptances.
pub struct UffLb {
    pub n: usize,
}

impl UffLb {
    pub fn new(n: usize) -> UffLb {
        assert!(n >= 2, "needs n >= 2");
        UffLb { n }
    }

    fn eps(&self) -> Rat {
        rat(1, 24 * self.n as i64)
    }

    fn tail_per_bin(&self) -> usize {
        12 * self.n - 2
    }

    fn sequence(&self) -> Vec<Request> {
        let eps = self.eps();
        let one = Rat::one();
        let half = rat(1, 2);
        let mut seq = Vec::new();
        for _ in 0..self.n {
            seq.push(item(&one - &eps));
            seq.push(item(eps.clone()));
            seq.push(item(&half + &eps));
        }
        let tail = (self.n - 1) * self.tail_per_bin();
        seq.extend(std::iter::repeat(item(eps.clone())).take(tail));
        seq
    }
}

impl Construction for UffLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::DualBinPacking { n: self.n }
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        self.sequence().get(history.len()).cloned()
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        // Bin 0: the first 1-ε plus round 1's ε (exactly 1). Bin j for
        // j = 1..n-1: round j's 1/2+ε, round j+1's ε, and 12n-2 tail ε
        // items (exactly 1). Round n's 1/2+ε and all later 1-ε items are
        // rejected.
        let n = self.n;
        let mut decisions = Vec::with_capacity(sequence.len());
        for round in 0..n {
            decisions.push(if round == 0 {
                Decision::AssignBin(0)
            } else {
                Decision::Reject
            });
            decisions.push(Decision::AssignBin(round));
            decisions.push(if round < n - 1 {
                Decision::AssignBin(round + 1)
            } else {
                Decision::Reject
            });
        }
        let per_bin = self.tail_per_bin();
        let tail = sequence.len() - 3 * n;
        for t in 0..tail {
            decisions.push(Decision::AssignBin(1 + t / per_bin));
        }
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::play;
    use crate::core::run::{make_policy, AlgorithmId};
    use crate::core::trace::prefix_profile;
    use crate::oracle::check_witness;

    fn play_and_check(construction: &dyn Construction, algorithm: AlgorithmId) -> (Rat, Rat) {
        let instance = construction.instance();
        let mut policy = make_policy(algorithm, &instance).unwrap();
        let playout = play(construction, policy.as_mut()).unwrap();
        let witness = playout.witness.expect("bundled witness");
        let profile = prefix_profile(&playout.alg_trace, instance.direction());
        let opt = check_witness(&instance, &playout.sequence, Some(&profile), &witness).unwrap();
        (playout.alg_trace.final_value.clone(), opt)
    }

    #[test]
    fn anyfit_first_fit_takes_case_one() {
        let (alg, opt) = play_and_check(&AnyFitLb::new(2), AlgorithmId::FirstFit);
        assert_eq!(alg, Rat::int(7));
        assert_eq!(opt, Rat::int(5));

        let (alg, opt) = play_and_check(&AnyFitLb::new(4), AlgorithmId::FirstFit);
        assert_eq!(alg, Rat::int(13));
        assert_eq!(opt, Rat::int(9));
    }

    #[test]
    fn anyfit_best_fit_takes_case_one() {
        let (alg, opt) = play_and_check(&AnyFitLb::new(3), AlgorithmId::BestFit);
        assert_eq!(alg, Rat::int(10));
        assert_eq!(opt, Rat::int(7));
    }

    #[test]
    fn anyfit_worst_fit_takes_case_two() {
        let (alg, opt) = play_and_check(&AnyFitLb::new(2), AlgorithmId::WorstFit);
        assert_eq!(alg, Rat::int(6));
        assert_eq!(opt, Rat::int(4));
    }

    #[test]
    fn uff_lb_ratio_matches_closed_form() {
        for n in 2..=4usize {
            let (alg, opt) = play_and_check(&UffLb::new(n), AlgorithmId::UnfairFirstFit);
            let n_i = n as i64;
            assert_eq!(alg, Rat::int(2 * n_i));
            assert_eq!(opt, Rat::int(2 * n_i + (n_i - 1) * (12 * n_i - 2)));
        }
    }
}
