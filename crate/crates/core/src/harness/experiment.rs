//! Experiment orchestration: play a construction (or a fixed sequence)
//! against an algorithm, resolve the prefix-constrained optimum from the
//! oracle and/or the bundled witness, and compute exact ratios.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adversary::{
    self, play, AnyFitLb, Construction, CoveringLb, FastLb, GreedyFastTiesCounter,
    MakespanAdaptiveLb, MakespanGreedyLb, MatchingRandom, SantaRelatedAdaptive, SeatResLb,
    ThresholdCounter, UffLb,
};
use crate::core::error::CoreError;
use crate::core::problem::Direction;
use crate::core::rational::Rat;
use crate::core::run::{make_policy, AlgorithmId};
use crate::core::trace::prefix_profile;
use crate::oracle::{self, SearchConfig, Status};

/// Every bundled construction, by its stable CLI id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    MakespanGreedyLb,
    MakespanAdaptiveLb,
    GreedyFasttiesCounter,
    FastLb,
    ThresholdCounter,
    SantaRelatedAdaptive,
    AnyfitLb,
    UffLb,
    SeatresLb,
    CoveringLb,
    MatchingRandom,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 11] = [
        ConstructionId::MakespanGreedyLb,
        ConstructionId::MakespanAdaptiveLb,
        ConstructionId::GreedyFasttiesCounter,
        ConstructionId::FastLb,
        ConstructionId::ThresholdCounter,
        ConstructionId::SantaRelatedAdaptive,
        ConstructionId::AnyfitLb,
        ConstructionId::UffLb,
        ConstructionId::SeatresLb,
        ConstructionId::CoveringLb,
        ConstructionId::MatchingRandom,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionId::MakespanGreedyLb => "makespan-greedy-lb",
            ConstructionId::MakespanAdaptiveLb => "makespan-adaptive-lb",
            ConstructionId::GreedyFasttiesCounter => "greedy-fastties-counter",
            ConstructionId::FastLb => "fast-lb",
            ConstructionId::ThresholdCounter => "threshold-counter",
            ConstructionId::SantaRelatedAdaptive => "santa-related-adaptive",
            ConstructionId::AnyfitLb => "anyfit-lb",
            ConstructionId::UffLb => "uff-lb",
            ConstructionId::SeatresLb => "seatres-lb",
            ConstructionId::CoveringLb => "covering-lb",
            ConstructionId::MatchingRandom => "matching-random",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionId {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<ConstructionId, CoreError> {
        ConstructionId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| CoreError::InvalidInstance(format!("unknown construction id: {s:?}")))
    }
}

/// Construction parameters; each construction reads the ones it needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub m: Option<usize>,
    pub s: Option<Rat>,
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub seats: Option<usize>,
    pub q: Option<usize>,
    pub l: Option<usize>,
    pub seed: Option<u64>,
    pub size: Option<usize>,
}

impl Default for ConstructionParams {
    fn default() -> ConstructionParams {
        ConstructionParams {
            m: None,
            s: None,
            n: None,
            k: None,
            seats: None,
            q: None,
            l: None,
            seed: None,
            size: None,
        }
    }
}

impl ConstructionParams {
    /// Applies a sweep token to the construction's primary parameter.
    pub fn with_sweep_value(
        &self,
        id: ConstructionId,
        token: &str,
    ) -> Result<ConstructionParams, CoreError> {
        let mut params = self.clone();
        let bad = |what: &str| {
            CoreError::InvalidInstance(format!("sweep value {token:?} is not a valid {what}"))
        };
        match id {
            ConstructionId::MakespanGreedyLb | ConstructionId::MakespanAdaptiveLb => {
                params.m = Some(token.parse().map_err(|_| bad("machine count"))?);
            }
            ConstructionId::GreedyFasttiesCounter
            | ConstructionId::FastLb
            | ConstructionId::SantaRelatedAdaptive => {
                params.s = Some(token.parse().map_err(|_| bad("speed"))?);
            }
            ConstructionId::AnyfitLb | ConstructionId::UffLb => {
                params.n = Some(token.parse().map_err(|_| bad("n"))?);
            }
            ConstructionId::SeatresLb => {
                params.k = Some(token.parse().map_err(|_| bad("station count"))?);
            }
            ConstructionId::CoveringLb => {
                params.l = Some(token.parse().map_err(|_| bad("L"))?);
            }
            ConstructionId::MatchingRandom => {
                params.seed = Some(token.parse().map_err(|_| bad("seed"))?);
            }
            ConstructionId::ThresholdCounter => {
                return Err(CoreError::InvalidInstance(
                    "threshold-counter takes no sweep parameter".into(),
                ));
            }
        }
        Ok(params)
    }

    /// Human-readable rendering of the parameters a construction used.
    fn label(&self, id: ConstructionId) -> String {
        match id {
            ConstructionId::MakespanGreedyLb | ConstructionId::MakespanAdaptiveLb => {
                format!("m={}", self.m.unwrap_or(3))
            }
            ConstructionId::GreedyFasttiesCounter
            | ConstructionId::FastLb
            | ConstructionId::SantaRelatedAdaptive => {
                format!("s={}", self.s.clone().unwrap_or_else(|| Rat::int(2)))
            }
            ConstructionId::AnyfitLb | ConstructionId::UffLb => {
                format!("n={}", self.n.unwrap_or(2))
            }
            ConstructionId::SeatresLb => format!(
                "k={} seats={}",
                self.k.unwrap_or(12),
                self.seats.unwrap_or(8)
            ),
            ConstructionId::CoveringLb => {
                format!("q={} L={}", self.q.unwrap_or(10), self.l.unwrap_or(10))
            }
            ConstructionId::MatchingRandom => format!(
                "seed={} size={}",
                self.seed.unwrap_or(0),
                self.size.unwrap_or(8)
            ),
            ConstructionId::ThresholdCounter => "-".to_string(),
        }
    }
}

/// Instantiates a construction from its id and parameters (with documented
/// defaults for omitted ones).
pub fn build_construction(
    id: ConstructionId,
    params: &ConstructionParams,
) -> Result<Box<dyn Construction>, CoreError> {
    let s_default = || params.s.clone().unwrap_or_else(|| Rat::int(2));
    Ok(match id {
        ConstructionId::MakespanGreedyLb => Box::new(MakespanGreedyLb::new(params.m.unwrap_or(3))),
        ConstructionId::MakespanAdaptiveLb => {
            Box::new(MakespanAdaptiveLb::new(params.m.unwrap_or(3)))
        }
        ConstructionId::GreedyFasttiesCounter => {
            Box::new(GreedyFastTiesCounter::new(s_default()))
        }
        ConstructionId::FastLb => Box::new(FastLb::new(s_default())),
        ConstructionId::ThresholdCounter => Box::new(ThresholdCounter),
        ConstructionId::SantaRelatedAdaptive => Box::new(SantaRelatedAdaptive::new(s_default())),
        ConstructionId::AnyfitLb => Box::new(AnyFitLb::new(params.n.unwrap_or(2))),
        ConstructionId::UffLb => Box::new(UffLb::new(params.n.unwrap_or(2))),
        ConstructionId::SeatresLb => Box::new(SeatResLb::new(
            params.k.unwrap_or(12),
            params.seats.unwrap_or(8),
        )),
        ConstructionId::CoveringLb => Box::new(CoveringLb::new(
            params.q.unwrap_or(10),
            params.l.unwrap_or(10),
        )),
        ConstructionId::MatchingRandom => Box::new(MatchingRandom::new(
            params.seed.unwrap_or(0),
            params.size.unwrap_or(8),
        )),
    })
}

/// Where the reported optimum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptSource {
    Oracle,
    Witness,
    Both,
    Unresolved,
}

impl fmt::Display for OptSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OptSource::Oracle => "oracle",
            OptSource::Witness => "witness",
            OptSource::Both => "both",
            OptSource::Unresolved => "UNRESOLVED",
        };
        f.write_str(s)
    }
}

/// Which optimum sources an experiment may consult.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptPreference {
    Oracle,
    Witness,
    Both,
}

/// One sweep point's result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioRow {
    pub params: String,
    pub alg: Rat,
    pub opt_a: Option<Rat>,
    /// Unconstrained optimum, when the oracle completed it.
    pub opt: Option<Rat>,
    pub ratio: Option<Rat>,
    pub opt_source: OptSource,
}

/// Asymptotic fit A = c * OPT_A + alpha from the sweep's extreme rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fitted {
    pub c: Rat,
    pub alpha: Rat,
    /// Set when intermediate rows deviate from the affine fit.
    pub warning: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioReport {
    pub construction: String,
    pub algorithm: String,
    pub rows: Vec<RatioRow>,
    pub fitted: Option<Fitted>,
}

impl RatioReport {
    pub fn has_unresolved(&self) -> bool {
        self.rows.iter().any(|r| r.opt_source == OptSource::Unresolved)
    }
}

/// A full experiment: one construction, one algorithm, a parameter sweep.
pub struct ExperimentSpec {
    pub construction: ConstructionId,
    pub algorithm: AlgorithmId,
    /// One parameter set per sweep point; a single default point if empty.
    pub sweep: Vec<ConstructionParams>,
    pub oracle_config: SearchConfig,
    pub opt_preference: OptPreference,
    /// Fit the asymptotic (c, alpha) over the sweep.
    pub asymptotic: bool,
}

fn ratio_of(direction: Direction, alg: &Rat, opt_a: &Rat) -> Rat {
    if opt_a.is_zero() {
        // Both values at the empty-state objective: ratio 1 by convention.
        debug_assert!(alg.is_zero());
        return Rat::one();
    }
    let ratio = alg.checked_div(opt_a).expect("nonzero optimum");
    let _ = direction;
    ratio
}

/// Runs one sweep point and resolves its optimum.
fn run_point(
    spec: &ExperimentSpec,
    params: &ConstructionParams,
) -> Result<RatioRow, CoreError> {
    let construction = build_construction(spec.construction, params)?;
    let instance = construction.instance();
    let direction = instance.direction();
    let mut policy = make_policy(spec.algorithm, &instance)?;
    let playout = play(construction.as_ref(), policy.as_mut())?;
    let profile = prefix_profile(&playout.alg_trace, direction);
    let alg = playout.alg_trace.final_value.clone();

    // A bundled witness must verify before its value may stand in for the
    // optimum; a failing witness is a construction bug, not a data point.
    let witness_value = match (&playout.witness, spec.opt_preference) {
        (Some(witness), OptPreference::Witness | OptPreference::Both) => Some(oracle::check_witness(
            &instance,
            &playout.sequence,
            Some(&profile),
            witness,
        )?),
        _ => None,
    };
    let (oracle_value, opt) = match spec.opt_preference {
        OptPreference::Oracle | OptPreference::Both => {
            let bounded = oracle::solve_bounded(
                &instance,
                &playout.sequence,
                &profile,
                &spec.oracle_config,
            )?;
            let bounded_value = match bounded.status {
                Status::Complete => Some(bounded.value.clone().expect("complete result")),
                _ => None,
            };
            let unconstrained =
                oracle::solve_unconstrained(&instance, &playout.sequence, &spec.oracle_config)?;
            let opt = match unconstrained.status {
                Status::Complete => Some(unconstrained.value.clone().expect("complete result")),
                _ => None,
            };
            (bounded_value, opt)
        }
        OptPreference::Witness => (None, None),
    };

    // The witness is one feasible offline play, so the exact optimum can
    // only improve on it; keep the better of the two and record the source.
    let (opt_a, opt_source) = match (oracle_value, witness_value) {
        (Some(o), Some(w)) => {
            let best = match direction {
                Direction::Min => o.clone().min(w),
                Direction::Max => o.clone().max(w),
            };
            (Some(best), OptSource::Both)
        }
        (Some(o), None) => (Some(o), OptSource::Oracle),
        (None, Some(w)) => (Some(w), OptSource::Witness),
        (None, None) => (None, OptSource::Unresolved),
    };

    // Ordering invariant: OPT <= OPT_A <= A (MIN) or A <= OPT_A <= OPT
    // (MAX). A violation means an oracle or witness bug; abort.
    if let Some(opt_a) = &opt_a {
        let ordered = match direction {
            Direction::Min => {
                opt.iter().all(|o| o <= opt_a) && *opt_a <= alg
            }
            Direction::Max => {
                alg <= *opt_a && opt.iter().all(|o| opt_a <= o)
            }
        };
        if !ordered {
            return Err(CoreError::Internal(format!(
                "ordering invariant violated at {}: A={alg} OPT_A={opt_a} OPT={opt:?}",
                params.label(spec.construction)
            )));
        }
    }

    let ratio = opt_a.as_ref().map(|o| ratio_of(direction, &alg, o));
    Ok(RatioRow {
        params: params.label(spec.construction),
        alg,
        opt_a,
        opt,
        ratio,
        opt_source,
    })
}

/// Runs the whole sweep, in sweep order, plus the asymptotic fit if asked.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RatioReport, CoreError> {
    let default_sweep = [ConstructionParams::default()];
    let points: &[ConstructionParams] = if spec.sweep.is_empty() {
        &default_sweep
    } else {
        &spec.sweep
    };
    let mut rows = Vec::with_capacity(points.len());
    for params in points {
        rows.push(run_point(spec, params)?);
    }
    let fitted = if spec.asymptotic {
        Some(fit_asymptotic(&rows)?)
    } else {
        None
    };
    Ok(RatioReport {
        construction: spec.construction.to_string(),
        algorithm: spec.algorithm.to_string(),
        rows,
        fitted,
    })
}

/// Fits A = c * OPT_A + alpha through the first and last resolved rows,
/// flagging any intermediate row that deviates from the affine fit.
pub fn fit_asymptotic(rows: &[RatioRow]) -> Result<Fitted, CoreError> {
    let resolved: Vec<&RatioRow> = rows.iter().filter(|r| r.opt_a.is_some()).collect();
    let (first, last) = match (resolved.first(), resolved.last()) {
        (Some(f), Some(l)) if f.opt_a != l.opt_a => (*f, *l),
        _ => {
            return Err(CoreError::Internal(
                "asymptotic fit needs at least two rows with distinct optima".into(),
            ))
        }
    };
    let (o_first, o_last) = (first.opt_a.as_ref().unwrap(), last.opt_a.as_ref().unwrap());
    let c = (&last.alg - &first.alg).checked_div(&(o_last - o_first))?;
    let alpha = &last.alg - &(&c * o_last);
    let mut deviations = Vec::new();
    for row in &resolved {
        let o = row.opt_a.as_ref().unwrap();
        if row.alg != &(&c * o) + &alpha {
            deviations.push(row.params.clone());
        }
    }
    let warning = if deviations.is_empty() {
        None
    } else {
        Some(format!(
            "rows deviate from the affine fit: {}",
            deviations.join(", ")
        ))
    };
    Ok(Fitted { c, alpha, warning })
}

/// Plays a construction against an algorithm and returns the raw playout;
/// the CLI uses this for sequence dumps.
pub fn play_construction(
    id: ConstructionId,
    params: &ConstructionParams,
    algorithm: AlgorithmId,
) -> Result<adversary::Playout, CoreError> {
    let construction = build_construction(id, params)?;
    let instance = construction.instance();
    let mut policy = make_policy(algorithm, &instance)?;
    play(construction.as_ref(), policy.as_mut())
}
