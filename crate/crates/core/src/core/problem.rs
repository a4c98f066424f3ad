//! Problem instances, requests, and decisions.
//!
//! File formats (JSON):
//!   - instance: `{"problem": "makespan", "speeds": ["2/1", "1/1"]}`,
//!     `{"problem": "dual-bin-packing", "n": 2}`, ...
//!   - request: `{"job": "p/q"}`, `{"item": "p/q"}`, `{"interval": [a, b]}`,
//!     `{"edge": [u, v, "p/q"]}`.
//!
//! Rationals are serialized as `"p/q"` strings; round-trips are bit-exact.

use serde::{Deserialize, Serialize};

use super::error::CoreError;
use super::rational::Rat;

/// Optimization sense of a problem's objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

/// One of the six problem families with its static parameters.
///
/// Machine speeds are listed non-increasing: machine 0 is the fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum ProblemInstance {
    Makespan { speeds: Vec<Rat> },
    Santa { speeds: Vec<Rat> },
    BinPacking,
    BinCovering,
    DualBinPacking { n: usize },
    SeatReservation { k: u32, seats: usize },
    Matching,
}

impl ProblemInstance {
    /// Identical machines convenience constructor (all speeds 1).
    pub fn makespan_identical(m: usize) -> ProblemInstance {
        ProblemInstance::Makespan {
            speeds: vec![Rat::one(); m],
        }
    }

    pub fn santa_identical(m: usize) -> ProblemInstance {
        ProblemInstance::Santa {
            speeds: vec![Rat::one(); m],
        }
    }

    /// Two related machines, fastest first: speeds (s, 1).
    pub fn makespan_related(s: Rat) -> ProblemInstance {
        ProblemInstance::Makespan {
            speeds: vec![s, Rat::one()],
        }
    }

    pub fn santa_related(s: Rat) -> ProblemInstance {
        ProblemInstance::Santa {
            speeds: vec![s, Rat::one()],
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            ProblemInstance::Makespan { .. } | ProblemInstance::BinPacking => Direction::Min,
            ProblemInstance::Santa { .. }
            | ProblemInstance::BinCovering
            | ProblemInstance::DualBinPacking { .. }
            | ProblemInstance::SeatReservation { .. }
            | ProblemInstance::Matching => Direction::Max,
        }
    }

    pub fn machine_count(&self) -> Option<usize> {
        match self {
            ProblemInstance::Makespan { speeds } | ProblemInstance::Santa { speeds } => {
                Some(speeds.len())
            }
            _ => None,
        }
    }

    pub fn speeds(&self) -> Option<&[Rat]> {
        match self {
            ProblemInstance::Makespan { speeds } | ProblemInstance::Santa { speeds } => {
                Some(speeds)
            }
            _ => None,
        }
    }

    /// True when every machine has the same speed.
    pub fn identical_machines(&self) -> bool {
        match self.speeds() {
            Some(speeds) => speeds.windows(2).all(|w| w[0] == w[1]),
            None => false,
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let err = |msg: String| Err(CoreError::InvalidInstance(msg));
        match self {
            ProblemInstance::Makespan { speeds } | ProblemInstance::Santa { speeds } => {
                if speeds.is_empty() {
                    return err("machine count must be at least 1".into());
                }
                if speeds.iter().any(|s| !s.is_positive()) {
                    return err("all speeds must be positive".into());
                }
                if speeds.windows(2).any(|w| w[0] < w[1]) {
                    return err("speeds must be listed non-increasing (machine 0 fastest)".into());
                }
            }
            ProblemInstance::BinPacking | ProblemInstance::BinCovering => {}
            ProblemInstance::DualBinPacking { n } => {
                if *n < 1 {
                    return err("bin count n must be at least 1".into());
                }
            }
            ProblemInstance::SeatReservation { k, seats } => {
                if *k < 2 {
                    return err("station count k must be at least 2".into());
                }
                if *seats < 1 {
                    return err("seat count must be at least 1".into());
                }
            }
            ProblemInstance::Matching => {}
        }
        Ok(())
    }

    /// Checks that a request's variant (and value range) is legal for this
    /// problem family.
    pub fn validate_request(&self, request: &Request) -> Result<(), CoreError> {
        let mismatch = |want: &str| {
            Err(CoreError::RequestMismatch(format!(
                "expected {want}, got {request:?}"
            )))
        };
        match self {
            ProblemInstance::Makespan { .. } | ProblemInstance::Santa { .. } => match request {
                Request::Job(size) if size.is_positive() => Ok(()),
                Request::Job(_) => Err(CoreError::RequestMismatch(
                    "job size must be positive".into(),
                )),
                _ => mismatch("a job"),
            },
            ProblemInstance::BinPacking
            | ProblemInstance::BinCovering
            | ProblemInstance::DualBinPacking { .. } => match request {
                Request::Item(size) if size.is_positive() && *size <= Rat::one() => Ok(()),
                Request::Item(_) => Err(CoreError::RequestMismatch(
                    "item size must lie in (0, 1]".into(),
                )),
                _ => mismatch("an item"),
            },
            ProblemInstance::SeatReservation { k, .. } => match request {
                Request::Interval(a, b) if *a >= 1 && a < b && *b <= *k => Ok(()),
                Request::Interval(a, b) => Err(CoreError::RequestMismatch(format!(
                    "interval [{a},{b}) must satisfy 1 <= a < b <= k={k}"
                ))),
                _ => mismatch("an interval"),
            },
            ProblemInstance::Matching => match request {
                Request::Edge(u, v, _) if u != v => Ok(()),
                Request::Edge(..) => {
                    Err(CoreError::RequestMismatch("self-loop edge".into()))
                }
                _ => mismatch("an edge"),
            },
        }
    }
}

/// A single online request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Request {
    /// Scheduling job of a given size.
    Job(Rat),
    /// Packing item with size in (0, 1].
    Item(Rat),
    /// Half-open station interval [a, b), 1 <= a < b <= k.
    Interval(u32, u32),
    /// Edge (u, v) with a weight.
    Edge(u32, u32, Rat),
}

impl Request {
    pub fn size(&self) -> Option<&Rat> {
        match self {
            Request::Job(s) | Request::Item(s) => Some(s),
            _ => None,
        }
    }
}

/// An irrevocable per-request decision. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    AssignMachine(usize),
    AssignBin(usize),
    OpenNewBin,
    Reject,
    AssignSeat(usize),
    AcceptEdge,
    RejectEdge,
}

impl Decision {
    /// True for the decisions that accept a request in accept/reject
    /// problems (dual bin packing, seat reservation, matching).
    pub fn accepts(&self) -> bool {
        matches!(
            self,
            Decision::AssignBin(_)
                | Decision::OpenNewBin
                | Decision::AssignSeat(_)
                | Decision::AcceptEdge
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::rat;

    #[test]
    fn request_json_shapes() {
        let cases = [
            (Request::Job(rat(5, 12)), r#"{"job":"5/12"}"#),
            (Request::Item(rat(1, 2)), r#"{"item":"1/2"}"#),
            (Request::Interval(1, 3), r#"{"interval":[1,3]}"#),
            (Request::Edge(1, 3, rat(1, 1)), r#"{"edge":[1,3,"1/1"]}"#),
        ];
        for (req, json) in cases {
            assert_eq!(serde_json::to_string(&req).unwrap(), json);
            assert_eq!(serde_json::from_str::<Request>(json).unwrap(), req);
        }
    }

    #[test]
    fn instance_json_shapes() {
        let inst = ProblemInstance::makespan_related(rat(2, 1));
        let json = serde_json::to_string(&inst).unwrap();
        assert_eq!(json, r#"{"problem":"makespan","speeds":["2/1","1/1"]}"#);
        assert_eq!(serde_json::from_str::<ProblemInstance>(&json).unwrap(), inst);

        let inst = ProblemInstance::SeatReservation { k: 12, seats: 8 };
        let json = serde_json::to_string(&inst).unwrap();
        assert_eq!(json, r#"{"problem":"seat-reservation","k":12,"seats":8}"#);
        assert_eq!(serde_json::from_str::<ProblemInstance>(&json).unwrap(), inst);

        let json = r#"{"problem":"bin-packing"}"#;
        assert_eq!(
            serde_json::from_str::<ProblemInstance>(json).unwrap(),
            ProblemInstance::BinPacking
        );
    }

    #[test]
    fn validation_rejects_bad_instances() {
        assert!(ProblemInstance::Makespan { speeds: vec![] }.validate().is_err());
        assert!(ProblemInstance::Makespan {
            speeds: vec![rat(1, 1), rat(2, 1)]
        }
        .validate()
        .is_err());
        assert!(ProblemInstance::SeatReservation { k: 1, seats: 2 }
            .validate()
            .is_err());
        assert!(ProblemInstance::DualBinPacking { n: 0 }.validate().is_err());
    }

    #[test]
    fn validation_rejects_mismatched_requests() {
        let inst = ProblemInstance::makespan_identical(2);
        assert!(inst.validate_request(&Request::Item(rat(1, 2))).is_err());
        assert!(inst.validate_request(&Request::Job(rat(0, 1))).is_err());

        let inst = ProblemInstance::BinPacking;
        assert!(inst.validate_request(&Request::Item(rat(3, 2))).is_err());
        assert!(inst.validate_request(&Request::Item(rat(1, 1))).is_ok());

        let inst = ProblemInstance::SeatReservation { k: 4, seats: 2 };
        assert!(inst.validate_request(&Request::Interval(2, 2)).is_err());
        assert!(inst.validate_request(&Request::Interval(1, 5)).is_err());
        assert!(inst.validate_request(&Request::Interval(1, 4)).is_ok());
    }
}
