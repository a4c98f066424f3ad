//! Decision traces and prefix profiles.

use serde::{Deserialize, Serialize};

use super::problem::{Decision, Direction};
use super::rational::Rat;

/// One executed step: the decision taken and the objective value of the
/// resulting prefix state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub decision: Decision,
    pub value: Rat,
}

/// The full record of a run: per-step decisions with the objective value
/// after each prefix. `final_value` equals the last prefix value, or the
/// empty-state objective for an empty trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionTrace {
    pub steps: Vec<TraceStep>,
    pub final_value: Rat,
}

impl DecisionTrace {
    pub fn empty(empty_objective: Rat) -> DecisionTrace {
        DecisionTrace {
            steps: Vec::new(),
            final_value: empty_objective,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn decisions(&self) -> impl Iterator<Item = &Decision> {
        self.steps.iter().map(|s| &s.decision)
    }

    pub fn prefix_values(&self) -> impl Iterator<Item = &Rat> {
        self.steps.iter().map(|s| &s.value)
    }
}

/// An online algorithm's prefix-value envelope: the objective after each
/// prefix length 1..T. This is the constraint the bounded offline optimum
/// must dominate (<= for MIN problems, >= for MAX problems).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrefixProfile {
    pub direction: Direction,
    pub values: Vec<Rat>,
}

impl PrefixProfile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when an offline prefix value satisfies the constraint at `step`.
    pub fn admits(&self, step: usize, offline_value: &Rat) -> bool {
        let bound = &self.values[step];
        match self.direction {
            Direction::Min => offline_value <= bound,
            Direction::Max => offline_value >= bound,
        }
    }
}

/// Extracts the prefix-value envelope from a trace, verbatim.
pub fn prefix_profile(trace: &DecisionTrace, direction: Direction) -> PrefixProfile {
    PrefixProfile {
        direction,
        values: trace.prefix_values().cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn profile_is_a_projection() {
        let trace = DecisionTrace {
            steps: [2, 2, 2, 3]
                .iter()
                .map(|&v| TraceStep {
                    decision: Decision::AssignMachine(0),
                    value: Rat::int(v),
                })
                .collect(),
            final_value: Rat::int(3),
        };
        let profile = prefix_profile(&trace, Direction::Min);
        assert_eq!(
            profile.values,
            vec![Rat::int(2), Rat::int(2), Rat::int(2), Rat::int(3)]
        );
    }

    #[test]
    fn empty_trace_gives_empty_profile() {
        let trace = DecisionTrace::empty(Rat::zero());
        assert!(prefix_profile(&trace, Direction::Max).is_empty());
    }

    #[test]
    fn admits_respects_direction() {
        let profile = PrefixProfile {
            direction: Direction::Min,
            values: vec![rat(3, 2)],
        };
        assert!(profile.admits(0, &Rat::one()));
        assert!(!profile.admits(0, &Rat::int(2)));

        let profile = PrefixProfile {
            direction: Direction::Max,
            values: vec![rat(3, 2)],
        };
        assert!(!profile.admits(0, &Rat::one()));
        assert!(profile.admits(0, &Rat::int(2)));
    }
}
