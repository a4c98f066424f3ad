use proptest::prelude::*;

use oba::adversary::{AnyFitLb, Construction, MakespanAdaptiveLb};
use oba::core::problem::{Decision, ProblemInstance, Request};
use oba::core::rational::Rat;
use oba::core::run::{run_algorithm, AlgorithmId};
use oba::core::trace::prefix_profile;
use oba::harness::{run_experiment, to_csv, ConstructionId, ConstructionParams, ExperimentSpec,
    OptPreference};
use oba::oracle::{self, SearchConfig};

fn jobs(sizes: &[i64]) -> Vec<Request> {
    sizes
        .iter()
        .map(|&n| Request::Job(Rat::new(n, 4).unwrap()))
        .collect()
}

fn items(numers: &[i64]) -> Vec<Request> {
    numers
        .iter()
        .map(|&n| Request::Item(Rat::new(n, 8).unwrap()))
        .collect()
}

proptest! {
    #[test]
    fn rat_json_round_trips(n in -999i64..1000, d in 1i64..100) {
        let value = Rat::new(n, d).unwrap();
        let json = serde_json::to_string(&value).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rat>(&json).unwrap(), value);
    }

    #[test]
    fn request_json_round_trips(n in 1i64..17, d in 1i64..17, a in 1u32..10, span in 1u32..5) {
        for request in [
            Request::Job(Rat::new(n, d).unwrap()),
            Request::Item(Rat::new(n.min(d), d).unwrap()),
            Request::Interval(a, a + span),
            Request::Edge(a, a + span, Rat::new(n, d).unwrap()),
        ] {
            let json = serde_json::to_string(&request).unwrap();
            prop_assert_eq!(serde_json::from_str::<Request>(&json).unwrap(), request);
        }
    }

    #[test]
    fn instance_json_round_trips(m in 1usize..5, n in 1usize..4, k in 2u32..20, seats in 1usize..6) {
        for instance in [
            ProblemInstance::makespan_identical(m),
            ProblemInstance::santa_related(Rat::new(3, 2).unwrap()),
            ProblemInstance::BinPacking,
            ProblemInstance::BinCovering,
            ProblemInstance::DualBinPacking { n },
            ProblemInstance::SeatReservation { k, seats },
            ProblemInstance::Matching,
        ] {
            let json = serde_json::to_string(&instance).unwrap();
            prop_assert_eq!(serde_json::from_str::<ProblemInstance>(&json).unwrap(), instance);
        }
    }

    /// Re-solving under the unconstrained optimum's own prefix profile can
    /// neither gain nor lose anything.
    #[test]
    fn bounded_under_optimal_profile_matches_unconstrained(sizes in prop::collection::vec(1i64..=8, 1..6)) {
        let instance = ProblemInstance::makespan_identical(3);
        let sequence = jobs(&sizes);
        let config = SearchConfig::unlimited();
        let free = oracle::solve_unconstrained(&instance, &sequence, &config).unwrap();
        let witness = free.witness.clone().unwrap();
        let profile = prefix_profile(&witness, instance.direction());
        let bounded = oracle::solve_bounded(&instance, &sequence, &profile, &config).unwrap();
        prop_assert_eq!(bounded.value, free.value);
    }

    /// Any-fit discipline: first-fit never opens a bin an item would have
    /// fit into, and never overfills one.
    #[test]
    fn first_fit_is_any_fit(numers in prop::collection::vec(1i64..=8, 1..10)) {
        let instance = ProblemInstance::BinPacking;
        let sequence = items(&numers);
        let trace = run_algorithm(&instance, AlgorithmId::FirstFit, &sequence).unwrap();
        let one = Rat::one();
        let mut loads: Vec<Rat> = Vec::new();
        for (request, step) in sequence.iter().zip(trace.steps.iter()) {
            let size = request.size().unwrap();
            match &step.decision {
                Decision::AssignBin(i) => {
                    loads[*i] = &loads[*i] + size;
                    prop_assert!(loads[*i] <= one);
                }
                Decision::OpenNewBin => {
                    prop_assert!(loads.iter().all(|l| &(l + size) > &one));
                    loads.push(size.clone());
                }
                other => prop_assert!(false, "unexpected decision {other:?}"),
            }
        }
    }
}

/// Adaptive constructions must be pure functions of the decision history:
/// replaying a recorded playout yields the same requests.
#[test]
fn adaptive_constructions_replay_from_history() {
    let cases: Vec<(Box<dyn Construction>, AlgorithmId)> = vec![
        (Box::new(MakespanAdaptiveLb::new(3)), AlgorithmId::GreedyIdentical),
        (Box::new(MakespanAdaptiveLb::new(4)), AlgorithmId::Threshold43),
        (Box::new(AnyFitLb::new(3)), AlgorithmId::WorstFit),
    ];
    for (construction, algorithm) in cases {
        let instance = construction.instance();
        let mut policy = oba::core::run::make_policy(algorithm, &instance).unwrap();
        let playout = oba::adversary::play(construction.as_ref(), policy.as_mut()).unwrap();
        let history: Vec<(Request, Decision)> = playout
            .sequence
            .iter()
            .cloned()
            .zip(playout.alg_trace.decisions().cloned())
            .collect();
        for t in 0..history.len() {
            assert_eq!(
                construction.next_request(&history[..t]).as_ref(),
                Some(&playout.sequence[t])
            );
        }
        assert_eq!(construction.next_request(&history), None);
    }
}

/// Reports are byte-identical across repeated runs.
#[test]
fn reports_are_deterministic() {
    let spec = || ExperimentSpec {
        construction: ConstructionId::MatchingRandom,
        algorithm: AlgorithmId::MatchingGreedy,
        sweep: vec![ConstructionParams {
            seed: Some(11),
            size: Some(6),
            ..ConstructionParams::default()
        }],
        oracle_config: SearchConfig::unlimited(),
        opt_preference: OptPreference::Oracle,
        asymptotic: false,
    };
    let first = to_csv(&run_experiment(&spec()).unwrap());
    let second = to_csv(&run_experiment(&spec()).unwrap());
    assert_eq!(first, second);
    assert!(first.starts_with("params,A,OPT_A,OPT,ratio,opt_source\n"));
}
