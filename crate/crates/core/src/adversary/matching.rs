//! Seeded random edge sequences for online weighted matching.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Construction;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::trace::DecisionTrace;

/// A reproducible random edge sequence on 8 vertices with weights from
/// {0, 1/4, 2/4, 3/4, 1}. No bundled witness: the sequences are small enough
/// for the exact oracle.
pub struct MatchingRandom {
    pub seed: u64,
    pub size: usize,
}

impl MatchingRandom {
    pub fn new(seed: u64, size: usize) -> MatchingRandom {
        MatchingRandom { seed, size }
    }

    fn sequence(&self) -> Vec<Request> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut seq = Vec::with_capacity(self.size);
        while seq.len() < self.size {
            let u = rng.gen_range(0..8u32);
            let v = rng.gen_range(0..8u32);
            if u == v {
                continue;
            }
            let numer = rng.gen_range(0..=4i64);
            seq.push(Request::Edge(u, v, Rat::new(numer, 4).unwrap()));
        }
        seq
    }
}

impl Construction for MatchingRandom {
    fn instance(&self) -> ProblemInstance {
        ProblemInstance::Matching
    }

    fn next_request(&self, history: &[(Request, Decision)]) -> Option<Request> {
        self.sequence().get(history.len()).cloned()
    }

    fn witness(&self, _sequence: &[Request], _alg_trace: &DecisionTrace) -> Option<DecisionTrace> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let a = MatchingRandom::new(7, 6).sequence();
        let b = MatchingRandom::new(7, 6).sequence();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        let c = MatchingRandom::new(8, 6).sequence();
        assert_ne!(a, c);
    }

    #[test]
    fn edges_are_valid_requests() {
        let construction = MatchingRandom::new(42, 20);
        let instance = construction.instance();
        for request in construction.sequence() {
            instance.validate_request(&request).unwrap();
        }
    }
}
