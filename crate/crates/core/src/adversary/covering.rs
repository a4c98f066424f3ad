//! Adversarial sequence for bin covering.

use super::Construction;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::run::trace_from_decisions;
use crate::core::trace::DecisionTrace;

/// 1/2 lower bound for greedy bin covering: q items of size δ = 1/(q+1)
/// (total below 1, so greedy covers nothing yet), then l items of size
/// 1 - (q/l)·δ. Greedy covers 1 + ⌊(l-1)/2⌋ bins; the witness splits the
/// small items into l groups of q/l and covers l bins at exactly 1 each.
/// Requires l to divide q.
pub struct CoveringLb {
    pub q: usize,
    pub l: usize,
}

impl CoveringLb {
    pub fn new(q: usize, l: usize) -> CoveringLb {
        assert!(l >= 1 && q >= l && q % l == 0, "needs l >= 1 and l | q");
        CoveringLb { q, l }
    }

    fn delta(&self) -> Rat {
        Rat::new(1, self.q as i64 + 1).expect("nonzero denominator")
    }

    fn large(&self) -> Rat {
        let per_group = Rat::int((self.q / self.l) as i64);
        Rat::one() - per_group * self.delta()
    }

    fn sequence(&self) -> Vec<Request> {
        let mut seq = Vec::with_capacity(self.q + self.l);
        seq.extend(std::iter::repeat(Request::Item(self.delta())).take(self.q));
        seq.extend(std::iter::repeat(Request::Item(self.large())).take(self.l));
        seq
    }
}

impl Construction for CoveringLb {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::BinCovering
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        self.sequence().get(history.len()).cloned()
    }

    fn witness(&self, sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        let per_group = self.q / self.l;
        let mut decisions = Vec::with_capacity(sequence.len());
        for j in 0..self.q {
            decisions.push(if j % per_group == 0 {
                Decision::OpenNewBin
            } else {
                Decision::AssignBin(j / per_group)
            });
        }
        for i in 0..self.l {
            decisions.push(Decision::AssignBin(i));
        }
        trace_from_decisions(&self.instance(), sequence, &decisions).ok()
    }
}
