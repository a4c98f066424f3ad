//! Makespan and Santa Claus scheduling on identical and uniformly related
//! machines, plus every scheduling policy under study.
//!
//! "Load" of a machine always means completion time: total assigned size
//! divided by speed. This is the reading both objectives use, on identical
//! and on related machines alike.

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;

/// Machine loads for a scheduling run.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchedState {
    /// Total job size assigned per machine.
    pub assigned: Vec<Rat>,
    /// Machine speeds, non-increasing (machine 0 fastest).
    pub speeds: Vec<Rat>,
}

impl SchedState {
    pub fn new(speeds: Vec<Rat>) -> SchedState {
        let assigned = vec![Rat::zero(); speeds.len()];
        SchedState { assigned, speeds }
    }

    pub fn machine_count(&self) -> usize {
        self.speeds.len()
    }

    /// Completion time of machine `i`: assigned size divided by speed.
    pub fn completion(&self, i: usize) -> Rat {
        &self.assigned[i] / &self.speeds[i]
    }

    /// Completion time of machine `i` if `size` were added to it.
    pub fn completion_with(&self, i: usize, size: &Rat) -> Rat {
        &(&self.assigned[i] + size) / &self.speeds[i]
    }

    pub fn add(&mut self, i: usize, size: &Rat) {
        self.assigned[i] += size;
    }

    pub fn total_assigned(&self) -> Rat {
        self.assigned.iter().sum()
    }
}

/// Maximum completion time over all machines; 0 for the empty state.
pub fn makespan(state: &SchedState) -> Rat {
    (0..state.machine_count())
        .map(|i| state.completion(i))
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Minimum completion time over all machines; 0 while any machine is empty.
pub fn min_load(state: &SchedState) -> Rat {
    (0..state.machine_count())
        .map(|i| state.completion(i))
        .min()
        .unwrap_or_else(Rat::zero)
}

/// The scheduling policies named in the analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchedPolicy {
    /// Least loaded machine, lowest index on ties (identical machines).
    GreedyIdentical,
    /// Two related machines; minimize the resulting makespan, ties to the
    /// slower machine (index 1).
    GreedyRelatedSlowTies,
    /// As above but ties to the faster machine (index 0).
    GreedyRelatedFastTies,
    /// Always the faster machine.
    Fast,
    /// Santa Claus greedy on identical machines: machine of minimum load,
    /// lowest index on ties.
    SantaGreedy,
    /// Santa Claus on related machines: machine of minimum completion time,
    /// lowest index on ties.
    SantaLeastLoaded,
    /// Most loaded machine whose resulting makespan stays within 4/3 of the
    /// exact prefix optimum; least loaded machine if none qualifies.
    Threshold43,
}

impl SchedPolicy {
    /// Policy/instance applicability per the instance family and machine
    /// configuration.
    pub fn check_applicable(&self, instance: &ProblemInstance) -> Result<(), CoreError> {
        let fail = |reason: &str| {
            Err(CoreError::PolicyMismatch {
                algorithm: format!("{self:?}"),
                reason: reason.to_string(),
            })
        };
        match self {
            SchedPolicy::GreedyIdentical | SchedPolicy::Threshold43 => match instance {
                ProblemInstance::Makespan { .. } if instance.identical_machines() => Ok(()),
                ProblemInstance::Makespan { .. } => fail("requires identical machines"),
                _ => fail("requires a makespan instance"),
            },
            SchedPolicy::GreedyRelatedSlowTies
            | SchedPolicy::GreedyRelatedFastTies
            | SchedPolicy::Fast => match instance {
                ProblemInstance::Makespan { speeds } if speeds.len() == 2 => Ok(()),
                ProblemInstance::Makespan { .. } => fail("requires exactly two machines"),
                _ => fail("requires a makespan instance"),
            },
            SchedPolicy::SantaGreedy => match instance {
                ProblemInstance::Santa { .. } if instance.identical_machines() => Ok(()),
                ProblemInstance::Santa { .. } => fail("requires identical machines"),
                _ => fail("requires a Santa Claus instance"),
            },
            SchedPolicy::SantaLeastLoaded => match instance {
                ProblemInstance::Santa { .. } => Ok(()),
                _ => fail("requires a Santa Claus instance"),
            },
        }
    }
}

/// Index of the machine with minimum completion time, lowest index on ties.
fn least_loaded(state: &SchedState) -> usize {
    let mut best = 0;
    for i in 1..state.machine_count() {
        if state.completion(i) < state.completion(best) {
            best = i;
        }
    }
    best
}

/// One step of a scheduling policy. `prefix_opt` must be supplied exactly
/// for `Threshold43`: the optimal makespan of the prefix including `job`.
pub fn schedule_step(
    policy: SchedPolicy,
    instance: &ProblemInstance,
    state: &SchedState,
    job: &Request,
    prefix_opt: Option<&Rat>,
) -> Result<Decision, CoreError> {
    policy.check_applicable(instance)?;
    let size = match job {
        Request::Job(size) => size,
        _ => {
            return Err(CoreError::RequestMismatch(format!(
                "expected a job, got {job:?}"
            )))
        }
    };
    let machine = match policy {
        SchedPolicy::GreedyIdentical | SchedPolicy::SantaGreedy | SchedPolicy::SantaLeastLoaded => {
            least_loaded(state)
        }
        SchedPolicy::GreedyRelatedSlowTies | SchedPolicy::GreedyRelatedFastTies => {
            // Resulting makespan if the job goes to machine i.
            let resulting = |i: usize| {
                (0..state.machine_count())
                    .map(|j| {
                        if i == j {
                            state.completion_with(j, size)
                        } else {
                            state.completion(j)
                        }
                    })
                    .max()
                    .expect("nonempty machines")
            };
            let (r0, r1) = (resulting(0), resulting(1));
            match (policy, r0.cmp(&r1)) {
                (_, std::cmp::Ordering::Less) => 0,
                (_, std::cmp::Ordering::Greater) => 1,
                (SchedPolicy::GreedyRelatedSlowTies, std::cmp::Ordering::Equal) => 1,
                (_, std::cmp::Ordering::Equal) => 0,
            }
        }
        SchedPolicy::Fast => 0,
        SchedPolicy::Threshold43 => {
            let opt = prefix_opt.ok_or_else(|| {
                CoreError::Internal("threshold-4-3 requires the prefix optimum".into())
            })?;
            let bound = Rat::new(4, 3).unwrap() * opt.clone();
            // Most loaded machine that keeps the resulting makespan within
            // the bound; lowest index on load ties. Fallback: least loaded.
            let mut best: Option<usize> = None;
            for i in 0..state.machine_count() {
                if state.completion_with(i, size) <= bound {
                    let better = match best {
                        None => true,
                        Some(b) => state.completion(i) > state.completion(b),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            best.unwrap_or_else(|| least_loaded(state))
        }
    };
    Ok(Decision::AssignMachine(machine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    fn state(assigned: &[(i64, i64)], speeds: &[(i64, i64)]) -> SchedState {
        SchedState {
            assigned: assigned.iter().map(|&(n, d)| rat(n, d)).collect(),
            speeds: speeds.iter().map(|&(n, d)| rat(n, d)).collect(),
        }
    }

    #[test]
    fn makespan_examples() {
        let s = state(&[(2, 1), (3, 1), (1, 1)], &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(makespan(&s), Rat::int(3));
        let s = SchedState::new(vec![rat(1, 1); 2]);
        assert_eq!(makespan(&s), Rat::zero());
        let s = state(&[(6, 1), (0, 1)], &[(2, 1), (1, 1)]);
        assert_eq!(makespan(&s), Rat::int(3));
    }

    #[test]
    fn min_load_examples() {
        let s = state(&[(1, 1), (1, 1)], &[(2, 1), (1, 1)]);
        assert_eq!(min_load(&s), rat(1, 2));
        let s = state(&[(5, 1), (0, 1)], &[(1, 1), (1, 1)]);
        assert_eq!(min_load(&s), Rat::zero());
        let s = state(&[(2, 1), (2, 1), (2, 1)], &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(min_load(&s), Rat::int(2));
    }

    #[test]
    fn related_greedy_breaks_ties_to_slow() {
        let inst = ProblemInstance::makespan_related(rat(2, 1));
        let s = state(&[(2, 1), (0, 1)], &[(2, 1), (1, 1)]);
        // Both choices give makespan 2; the tie goes to the slower machine.
        let d = schedule_step(
            SchedPolicy::GreedyRelatedSlowTies,
            &inst,
            &s,
            &Request::Job(Rat::int(2)),
            None,
        )
        .unwrap();
        assert_eq!(d, Decision::AssignMachine(1));
        let d = schedule_step(
            SchedPolicy::GreedyRelatedFastTies,
            &inst,
            &s,
            &Request::Job(Rat::int(2)),
            None,
        )
        .unwrap();
        assert_eq!(d, Decision::AssignMachine(0));
    }

    #[test]
    fn fast_always_uses_machine_zero() {
        let inst = ProblemInstance::makespan_related(rat(2, 1));
        let s = state(&[(4, 1), (0, 1)], &[(2, 1), (1, 1)]);
        let d = schedule_step(SchedPolicy::Fast, &inst, &s, &Request::Job(Rat::int(2)), None)
            .unwrap();
        assert_eq!(d, Decision::AssignMachine(0));
    }

    #[test]
    fn threshold_picks_most_loaded_feasible_machine() {
        let inst = ProblemInstance::makespan_identical(3);
        let s = state(&[(1, 1), (7, 12), (0, 1)], &[(1, 1), (1, 1), (1, 1)]);
        // Job 7/12 with prefix optimum 3/4: bound is 1. Machines 0 and 1
        // would exceed it; machine 2 is the only qualifying machine.
        let d = schedule_step(
            SchedPolicy::Threshold43,
            &inst,
            &s,
            &Request::Job(rat(7, 12)),
            Some(&rat(3, 4)),
        )
        .unwrap();
        assert_eq!(d, Decision::AssignMachine(2));
    }

    #[test]
    fn policy_instance_mismatch_is_an_error() {
        let inst = ProblemInstance::makespan_identical(3);
        let s = SchedState::new(vec![rat(1, 1); 3]);
        assert!(schedule_step(
            SchedPolicy::GreedyRelatedSlowTies,
            &inst,
            &s,
            &Request::Job(Rat::one()),
            None
        )
        .is_err());
        let santa = ProblemInstance::santa_identical(3);
        assert!(SchedPolicy::GreedyIdentical.check_applicable(&santa).is_err());
    }
}
