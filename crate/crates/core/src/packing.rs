//! Classic bin packing, bin covering, and dual bin packing, with the packing
//! policies under study and the accommodating-sequence machinery.
//!
//! Classic and covering variants open bins on demand and never close them.
//! The dual variant has a fixed, closed set of `n` bins and may reject.

use serde::{Deserialize, Serialize};

use crate::core::error::CoreError;
use crate::core::problem::{Decision, ProblemInstance, Request};
use crate::core::rational::Rat;
use crate::core::trace::DecisionTrace;
use crate::oracle::{self, SearchConfig};

/// Bin loads for a packing run.
///
/// Classic/covering: one entry per open bin. Dual: exactly `n` entries from
/// the start. `accepted` counts placed items; `seen` counts processed
/// requests (both only meaningful for the dual variant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinState {
    pub loads: Vec<Rat>,
    pub accepted: u64,
    pub seen: u64,
}

impl BinState {
    /// Empty classic/covering state: no open bins.
    pub fn open_ended() -> BinState {
        BinState {
            loads: Vec::new(),
            accepted: 0,
            seen: 0,
        }
    }

    /// Dual state with `n` empty bins.
    pub fn dual(n: usize) -> BinState {
        BinState {
            loads: vec![Rat::zero(); n],
            accepted: 0,
            seen: 0,
        }
    }

    /// True when `size` fits in bin `i` under the unit capacity.
    pub fn fits(&self, i: usize, size: &Rat) -> bool {
        &self.loads[i] + size <= Rat::one()
    }

    pub fn fits_anywhere(&self, size: &Rat) -> bool {
        (0..self.loads.len()).any(|i| self.fits(i, size))
    }
}

/// Number of open bins, as a rational.
pub fn bins_used(state: &BinState) -> Rat {
    Rat::int(state.loads.len() as i64)
}

/// Number of bins with total assigned size at least 1.
pub fn covered_bins(state: &BinState) -> Rat {
    let covered = state.loads.iter().filter(|l| **l >= Rat::one()).count();
    Rat::int(covered as i64)
}

/// Number of accepted items (dual variant).
pub fn accepted_count(state: &BinState) -> Rat {
    Rat::int(state.accepted as i64)
}

/// The packing policies named in the analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackPolicy {
    FirstFit,
    BestFit,
    WorstFit,
    CoveringGreedy,
    DualFirstFit,
    DualBestFit,
    DualWorstFit,
    UnfairFirstFit,
}

impl PackPolicy {
    pub fn check_applicable(&self, instance: &ProblemInstance) -> Result<(), CoreError> {
        let ok = match self {
            PackPolicy::FirstFit | PackPolicy::BestFit | PackPolicy::WorstFit => {
                matches!(instance, ProblemInstance::BinPacking)
            }
            PackPolicy::CoveringGreedy => matches!(instance, ProblemInstance::BinCovering),
            PackPolicy::DualFirstFit
            | PackPolicy::DualBestFit
            | PackPolicy::DualWorstFit
            | PackPolicy::UnfairFirstFit => {
                matches!(instance, ProblemInstance::DualBinPacking { .. })
            }
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::PolicyMismatch {
                algorithm: format!("{self:?}"),
                reason: "policy does not match the packing variant".into(),
            })
        }
    }

    /// Fair dual policies never reject an item that fits somewhere.
    pub fn is_fair(&self) -> bool {
        matches!(
            self,
            PackPolicy::DualFirstFit | PackPolicy::DualBestFit | PackPolicy::DualWorstFit
        )
    }
}

/// Lowest-index open bin with room.
fn first_fit_bin(state: &BinState, size: &Rat) -> Option<usize> {
    (0..state.loads.len()).find(|&i| state.fits(i, size))
}

/// Maximal-load bin with room, lowest index on ties.
fn best_fit_bin(state: &BinState, size: &Rat) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..state.loads.len() {
        if state.fits(i, size) {
            let better = match best {
                None => true,
                Some(b) => state.loads[i] > state.loads[b],
            };
            if better {
                best = Some(i);
            }
        }
    }
    best
}

/// Minimal-load bin with room, lowest index on ties.
fn worst_fit_bin(state: &BinState, size: &Rat) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..state.loads.len() {
        if state.fits(i, size) {
            let better = match best {
                None => true,
                Some(b) => state.loads[i] < state.loads[b],
            };
            if better {
                best = Some(i);
            }
        }
    }
    best
}

/// One step of a packing policy.
pub fn pack_step(
    policy: PackPolicy,
    instance: &ProblemInstance,
    state: &BinState,
    item: &Request,
) -> Result<Decision, CoreError> {
    policy.check_applicable(instance)?;
    let size = match item {
        Request::Item(size) => size,
        _ => {
            return Err(CoreError::RequestMismatch(format!(
                "expected an item, got {item:?}"
            )))
        }
    };
    let decision = match policy {
        PackPolicy::FirstFit => first_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::OpenNewBin),
        PackPolicy::BestFit => best_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::OpenNewBin),
        PackPolicy::WorstFit => worst_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::OpenNewBin),
        PackPolicy::CoveringGreedy => {
            // Always the active bin; a fresh bin becomes active once the
            // previous one reaches total size 1.
            match state.loads.last() {
                Some(last) if *last < Rat::one() => Decision::AssignBin(state.loads.len() - 1),
                _ => Decision::OpenNewBin,
            }
        }
        PackPolicy::DualFirstFit => first_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::Reject),
        PackPolicy::DualBestFit => best_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::Reject),
        PackPolicy::DualWorstFit => worst_fit_bin(state, size)
            .map(Decision::AssignBin)
            .unwrap_or(Decision::Reject),
        PackPolicy::UnfairFirstFit => {
            // Items above 1/2 are rejected as long as rejection keeps the
            // accepted count at or above two thirds of the prefix length
            // (prefix length stands in for the prefix optimum).
            let half = Rat::new(1, 2).unwrap();
            if *size > half {
                let threshold = (Rat::new(2, 3).unwrap() * Rat::int(state.seen as i64 + 1)).ceil();
                if Rat::int(state.accepted as i64) >= threshold {
                    Decision::Reject
                } else {
                    first_fit_bin(state, size)
                        .map(Decision::AssignBin)
                        .unwrap_or(Decision::Reject)
                }
            } else {
                first_fit_bin(state, size)
                    .map(Decision::AssignBin)
                    .unwrap_or(Decision::Reject)
            }
        }
    };
    Ok(decision)
}

/// True iff the unconstrained optimum packs the whole sequence.
pub fn is_accommodating(
    instance: &ProblemInstance,
    sequence: &[Request],
    config: &SearchConfig,
) -> Result<bool, CoreError> {
    let result = oracle::solve_unconstrained(instance, sequence, config)?;
    let value = result.require_complete()?;
    Ok(*value == Rat::int(sequence.len() as i64))
}

/// Builds the accommodating subsequence I' of `sequence` for a fair,
/// rejection-invariant policy: the bounded optimum's packed set with each
/// item it packed but the policy rejected replaced, in pairing order, by an
/// item the policy packed but the optimum rejected. Original relative order
/// is preserved.
pub fn accommodating_subsequence(
    instance: &ProblemInstance,
    sequence: &[Request],
    alg_trace: &DecisionTrace,
    opt_trace: &DecisionTrace,
) -> Result<Vec<Request>, CoreError> {
    if !matches!(instance, ProblemInstance::DualBinPacking { .. }) {
        return Err(CoreError::RequestMismatch(
            "accommodating subsequence is defined for dual bin packing".into(),
        ));
    }
    if alg_trace.len() != sequence.len() || opt_trace.len() != sequence.len() {
        return Err(CoreError::TraceLengthMismatch {
            trace_len: alg_trace.len().min(opt_trace.len()),
            seq_len: sequence.len(),
        });
    }
    let alg_accepts: Vec<bool> = alg_trace.decisions().map(|d| d.accepts()).collect();
    let opt_accepts: Vec<bool> = opt_trace.decisions().map(|d| d.accepts()).collect();

    // o_i: packed by the optimum only; a_i: packed by the policy only.
    let opt_only: Vec<usize> = (0..sequence.len())
        .filter(|&t| opt_accepts[t] && !alg_accepts[t])
        .collect();
    let alg_only: Vec<usize> = (0..sequence.len())
        .filter(|&t| alg_accepts[t] && !opt_accepts[t])
        .collect();
    if alg_only.len() > opt_only.len() {
        return Err(CoreError::Internal(
            "policy packed more items than the bounded optimum".into(),
        ));
    }

    let mut keep = vec![false; sequence.len()];
    for &t in (0..sequence.len()).filter(|&t| opt_accepts[t]).collect::<Vec<_>>().iter() {
        keep[t] = true;
    }
    for (o, a) in opt_only.iter().zip(alg_only.iter()) {
        keep[*o] = false;
        keep[*a] = true;
    }
    Ok((0..sequence.len())
        .filter(|&t| keep[t])
        .map(|t| sequence[t].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    fn classic_state(loads: &[(i64, i64)]) -> BinState {
        BinState {
            loads: loads.iter().map(|&(n, d)| rat(n, d)).collect(),
            accepted: 0,
            seen: 0,
        }
    }

    #[test]
    fn first_fit_prefers_lowest_index() {
        let state = classic_state(&[(2, 3), (5, 12)]);
        let d = pack_step(
            PackPolicy::FirstFit,
            &ProblemInstance::BinPacking,
            &state,
            &Request::Item(rat(1, 4)),
        )
        .unwrap();
        assert_eq!(d, Decision::AssignBin(0));
    }

    #[test]
    fn worst_fit_prefers_most_empty() {
        let state = classic_state(&[(2, 3), (5, 12)]);
        let d = pack_step(
            PackPolicy::WorstFit,
            &ProblemInstance::BinPacking,
            &state,
            &Request::Item(rat(1, 4)),
        )
        .unwrap();
        assert_eq!(d, Decision::AssignBin(1));
    }

    #[test]
    fn best_fit_prefers_most_full() {
        let state = classic_state(&[(5, 12), (2, 3)]);
        let d = pack_step(
            PackPolicy::BestFit,
            &ProblemInstance::BinPacking,
            &state,
            &Request::Item(rat(1, 4)),
        )
        .unwrap();
        assert_eq!(d, Decision::AssignBin(1));
    }

    #[test]
    fn covering_greedy_sticks_to_active_bin() {
        let inst = ProblemInstance::BinCovering;
        let empty = BinState::open_ended();
        let item = Request::Item(rat(1, 2));
        assert_eq!(
            pack_step(PackPolicy::CoveringGreedy, &inst, &empty, &item).unwrap(),
            Decision::OpenNewBin
        );
        let active = classic_state(&[(1, 1), (1, 2)]);
        assert_eq!(
            pack_step(PackPolicy::CoveringGreedy, &inst, &active, &item).unwrap(),
            Decision::AssignBin(1)
        );
        let full = classic_state(&[(1, 1), (3, 2)]);
        assert_eq!(
            pack_step(PackPolicy::CoveringGreedy, &inst, &full, &item).unwrap(),
            Decision::OpenNewBin
        );
    }

    #[test]
    fn unfair_first_fit_rejects_large_items_while_quota_holds() {
        let inst = ProblemInstance::DualBinPacking { n: 2 };
        let state = BinState {
            loads: vec![rat(47, 48) + rat(1, 48), Rat::zero()],
            accepted: 2,
            seen: 2,
        };
        // Size > 1/2 and 2 >= ceil((2/3)*3): reject even though it fits.
        let d = pack_step(
            PackPolicy::UnfairFirstFit,
            &inst,
            &state,
            &Request::Item(rat(25, 48)),
        )
        .unwrap();
        assert_eq!(d, Decision::Reject);
    }

    #[test]
    fn unfair_first_fit_accepts_when_quota_would_break() {
        let inst = ProblemInstance::DualBinPacking { n: 2 };
        let state = BinState::dual(2);
        // First request: rejecting would leave 0 < ceil(2/3) = 1 accepted.
        let d = pack_step(
            PackPolicy::UnfairFirstFit,
            &inst,
            &state,
            &Request::Item(rat(47, 48)),
        )
        .unwrap();
        assert_eq!(d, Decision::AssignBin(0));
    }

    #[test]
    fn objective_projections() {
        let state = classic_state(&[(2, 3), (5, 12), (1, 3)]);
        assert_eq!(bins_used(&state), Rat::int(3));
        let state = classic_state(&[(1, 1), (1, 2)]);
        assert_eq!(covered_bins(&state), Rat::int(1));
        let state = BinState {
            loads: vec![],
            accepted: 5,
            seen: 9,
        };
        assert_eq!(accepted_count(&state), Rat::int(5));
    }
}
