//! Edge-arrival weighted matching and its greedy policy.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, Request};
use crate::core::rational::Rat;

/// A partial matching under edge arrivals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchState {
    pub matched: BTreeSet<u32>,
    pub total_weight: Rat,
    pub accepted_edges: Vec<(u32, u32, Rat)>,
}

impl MatchState {
    pub fn new() -> MatchState {
        MatchState {
            matched: BTreeSet::new(),
            total_weight: Rat::zero(),
            accepted_edges: Vec::new(),
        }
    }

    /// True when both endpoints are still exposed.
    pub fn feasible(&self, u: u32, v: u32) -> bool {
        !self.matched.contains(&u) && !self.matched.contains(&v)
    }

    pub fn accept(&mut self, u: u32, v: u32, weight: Rat) {
        self.matched.insert(u);
        self.matched.insert(v);
        self.total_weight += &weight;
        self.accepted_edges.push((u, v, weight));
    }
}

impl Default for MatchState {
    fn default() -> Self {
        MatchState::new()
    }
}

/// Greedy matching: accept iff both endpoints are exposed and the weight is
/// strictly positive.
pub fn matching_greedy_step(state: &MatchState, edge: &Request) -> Result<Decision, CoreError> {
    match edge {
        Request::Edge(u, v, w) => {
            if state.feasible(*u, *v) && w.is_positive() {
                Ok(Decision::AcceptEdge)
            } else {
                Ok(Decision::RejectEdge)
            }
        }
        _ => Err(CoreError::RequestMismatch(format!(
            "expected an edge, got {edge:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn accepts_feasible_positive_edge() {
        let state = MatchState::new();
        let d = matching_greedy_step(&state, &Request::Edge(1, 3, rat(1, 1))).unwrap();
        assert_eq!(d, Decision::AcceptEdge);
    }

    #[test]
    fn rejects_edge_with_matched_endpoint() {
        let mut state = MatchState::new();
        state.accept(1, 3, rat(1, 1));
        let d = matching_greedy_step(&state, &Request::Edge(2, 3, rat(1, 1))).unwrap();
        assert_eq!(d, Decision::RejectEdge);
    }

    #[test]
    fn rejects_non_positive_weight() {
        let state = MatchState::new();
        let d = matching_greedy_step(&state, &Request::Edge(5, 6, Rat::zero())).unwrap();
        assert_eq!(d, Decision::RejectEdge);
    }
}
