//! The acceptance checklist: every headline bound reproduced end to end,
//! every equality property replayed over seeded random corpora, and the
//! search engine cross-checked against blind enumeration.

use crate::core::error::CoreError;
use crate::core::problem::{Direction, ProblemInstance, Request};
use crate::core::rational::{rat, Rat};
use crate::core::run::{run_algorithm, AlgorithmId};
use crate::core::trace::prefix_profile;
use crate::harness::corpus::Corpus;
use crate::harness::experiment::{
    fit_asymptotic, run_experiment, ConstructionId, ConstructionParams, ExperimentSpec,
    OptPreference, OptSource,
};
use crate::harness::naive::naive_best;
use crate::oracle::{self, SearchConfig, Status};
use crate::packing::{accommodating_subsequence, is_accommodating};

type Check = fn() -> Result<(), String>;

/// The acceptance criteria, in order, as (name, check) pairs.
pub fn criteria() -> Vec<(&'static str, Check)> {
    vec![
        ("makespan greedy lower bound sweep", c01),
        ("makespan greedy upper bound property", c02),
        ("two related machines ratio 1", c03),
        ("fast-ties greedy strictly above 1", c04),
        ("fast algorithm ratio (s+1)/s", c05),
        ("adaptive 4/3 for identical-machine policies", c06),
        ("threshold counterexample 17/12", c07),
        ("santa identical ratio 1", c08),
        ("santa related ratio 1/s", c09),
        ("any-fit 3/2 with asymptotic fit", c10),
        ("bin covering greedy 1/2", c11),
        ("dual accommodating-subsequence equivalence", c12),
        ("unfair first fit ratio tends to 0", c13),
        ("dual first/best fit stay above 1/2", c14),
        ("seat reservation 11/(k+7)", c15),
        ("matching greedy ratio 1", c16),
        ("oracle matches blind enumeration", c17),
    ]
}

/// Runs every criterion; returns (1-based index, name, outcome).
pub fn run_all() -> Vec<(usize, &'static str, Result<(), String>)> {
    criteria()
        .into_iter()
        .enumerate()
        .map(|(i, (name, check))| (i + 1, name, check()))
        .collect()
}

fn err(e: CoreError) -> String {
    e.to_string()
}

fn sweep<T: Clone>(values: &[T], set: impl Fn(&mut ConstructionParams, T)) -> Vec<ConstructionParams> {
    values
        .iter()
        .map(|v| {
            let mut p = ConstructionParams::default();
            set(&mut p, v.clone());
            p
        })
        .collect()
}

fn spec(
    construction: ConstructionId,
    algorithm: AlgorithmId,
    sweep: Vec<ConstructionParams>,
    opt_preference: OptPreference,
) -> ExperimentSpec {
    ExperimentSpec {
        construction,
        algorithm,
        sweep,
        oracle_config: SearchConfig::unlimited(),
        opt_preference,
        asymptotic: false,
    }
}

/// Bounded optimum of `algorithm`'s own run on `sequence`, plus the
/// algorithm's final value.
fn alg_and_bounded_opt(
    instance: &ProblemInstance,
    algorithm: AlgorithmId,
    sequence: &[Request],
) -> Result<(Rat, Rat), String> {
    let trace = run_algorithm(instance, algorithm, sequence).map_err(err)?;
    let profile = prefix_profile(&trace, instance.direction());
    let config = SearchConfig::unlimited();
    let result = oracle::solve_bounded(instance, sequence, &profile, &config).map_err(err)?;
    let opt = result.require_complete().map_err(err)?.clone();
    Ok((trace.final_value, opt))
}

fn c01() -> Result<(), String> {
    let params = sweep(&[3usize, 4, 5, 6], |p, m| p.m = Some(m));
    let report = run_experiment(&spec(
        ConstructionId::MakespanGreedyLb,
        AlgorithmId::GreedyIdentical,
        params,
        OptPreference::Witness,
    ))
    .map_err(err)?;
    let want = [rat(3, 2), rat(5, 3), rat(7, 4), rat(9, 5)];
    for (row, want) in report.rows.iter().zip(&want) {
        if row.ratio.as_ref() != Some(want) {
            return Err(format!("{}: ratio {:?}, want {want}", row.params, row.ratio));
        }
    }
    // Small cases: the exact search must confirm the scripted optimum.
    let report = run_experiment(&spec(
        ConstructionId::MakespanGreedyLb,
        AlgorithmId::GreedyIdentical,
        sweep(&[3usize, 4], |p, m| p.m = Some(m)),
        OptPreference::Both,
    ))
    .map_err(err)?;
    for (row, want) in report.rows.iter().zip(&want[..2]) {
        if row.opt_source != OptSource::Both {
            return Err(format!("{}: optimum not oracle-confirmed", row.params));
        }
        if row.ratio.as_ref() != Some(want) {
            return Err(format!("{}: oracle-confirmed ratio {:?}", row.params, row.ratio));
        }
    }
    Ok(())
}

fn c02() -> Result<(), String> {
    let mut corpus = Corpus::new(0x0201);
    for m in [3usize, 4] {
        let instance = ProblemInstance::makespan_identical(m);
        let bound = Rat::int(2) - Rat::new(1, m as i64 - 1).unwrap();
        for (max_numer, denom) in [(4i64, 4i64), (8, 8)] {
            for _ in 0..250 {
                let seq = corpus.jobs(8, max_numer, denom);
                let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::GreedyIdentical, &seq)?;
                if alg > &bound * &opt {
                    return Err(format!(
                        "greedy {alg} exceeds ({bound})*optimum {opt} on m={m}, {seq:?}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn c03() -> Result<(), String> {
    let mut corpus = Corpus::new(0x0301);
    for s in [rat(3, 2), Rat::int(2), Rat::int(3)] {
        let instance = ProblemInstance::makespan_related(s.clone());
        for _ in 0..350 {
            let seq = corpus.jobs(7, 4, 4);
            let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::GreedyRelated, &seq)?;
            if alg != opt {
                return Err(format!("greedy {alg} vs bounded optimum {opt} at s={s}, {seq:?}"));
            }
        }
    }
    Ok(())
}

fn c04() -> Result<(), String> {
    let report = run_experiment(&spec(
        ConstructionId::GreedyFasttiesCounter,
        AlgorithmId::GreedyRelatedFastties,
        sweep(&[Rat::int(2)], |p, s| p.s = Some(s)),
        OptPreference::Both,
    ))
    .map_err(err)?;
    let row = &report.rows[0];
    if row.alg != rat(5, 2) || row.opt_a != Some(Rat::int(2)) {
        return Err(format!("got A={} OPT_A={:?}, want 5/2 and 2", row.alg, row.opt_a));
    }
    Ok(())
}

fn c05() -> Result<(), String> {
    let speeds = [rat(3, 2), Rat::int(2), rat(5, 2)];
    let report = run_experiment(&spec(
        ConstructionId::FastLb,
        AlgorithmId::Fast,
        sweep(&speeds, |p, s| p.s = Some(s)),
        OptPreference::Both,
    ))
    .map_err(err)?;
    for (row, s) in report.rows.iter().zip(&speeds) {
        let want = (s + &Rat::one()).checked_div(s).map_err(err)?;
        if row.ratio.as_ref() != Some(&want) {
            return Err(format!("{}: ratio {:?}, want {want}", row.params, row.ratio));
        }
    }
    let mut corpus = Corpus::new(0x0501);
    for s in &speeds {
        let instance = ProblemInstance::makespan_related(s.clone());
        let bound = (s + &Rat::one()).checked_div(s).map_err(err)?;
        for _ in 0..170 {
            let seq = corpus.jobs(7, 4, 4);
            let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::Fast, &seq)?;
            if alg > &bound * &opt {
                return Err(format!(
                    "fast {alg} exceeds ({bound})*optimum {opt} at s={s}, {seq:?}"
                ));
            }
        }
    }
    Ok(())
}

fn c06() -> Result<(), String> {
    for m in [3usize, 4] {
        for algorithm in [AlgorithmId::GreedyIdentical, AlgorithmId::Threshold43] {
            let report = run_experiment(&spec(
                ConstructionId::MakespanAdaptiveLb,
                algorithm,
                sweep(&[m], |p, m| p.m = Some(m)),
                OptPreference::Witness,
            ))
            .map_err(err)?;
            let row = &report.rows[0];
            if row.alg < Rat::int(4) {
                return Err(format!("{algorithm} at m={m}: makespan {} < 4", row.alg));
            }
            if row.opt_a != Some(Rat::int(3)) {
                return Err(format!("{algorithm} at m={m}: witness {:?}, want 3", row.opt_a));
            }
        }
    }
    Ok(())
}

fn c07() -> Result<(), String> {
    let report = run_experiment(&spec(
        ConstructionId::ThresholdCounter,
        AlgorithmId::Threshold43,
        Vec::new(),
        OptPreference::Both,
    ))
    .map_err(err)?;
    let row = &report.rows[0];
    if row.alg != rat(17, 12) {
        return Err(format!("threshold makespan {}, want 17/12", row.alg));
    }
    if row.opt != Some(Rat::one()) {
        return Err(format!("unconstrained optimum {:?}, want 1", row.opt));
    }
    Ok(())
}

fn c08() -> Result<(), String> {
    let mut corpus = Corpus::new(0x0801);
    for m in [2usize, 3, 4] {
        let instance = ProblemInstance::santa_identical(m);
        for _ in 0..334 {
            let seq = corpus.jobs(7, 4, 4);
            let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::SantaGreedy, &seq)?;
            if alg != opt {
                return Err(format!("santa greedy {alg} vs optimum {opt} on m={m}, {seq:?}"));
            }
        }
    }
    Ok(())
}

fn c09() -> Result<(), String> {
    let speeds = [rat(3, 2), Rat::int(2)];
    let report = run_experiment(&spec(
        ConstructionId::SantaRelatedAdaptive,
        AlgorithmId::SantaLeastLoaded,
        sweep(&speeds, |p, s| p.s = Some(s)),
        OptPreference::Both,
    ))
    .map_err(err)?;
    for (row, s) in report.rows.iter().zip(&speeds) {
        let bound = Rat::one().checked_div(s).map_err(err)?;
        match &row.ratio {
            Some(ratio) if ratio <= &bound => {}
            other => return Err(format!("{}: ratio {other:?} above 1/{s}", row.params)),
        }
    }
    let mut corpus = Corpus::new(0x0901);
    for s in &speeds {
        let instance = ProblemInstance::santa_related(s.clone());
        let bound = Rat::one().checked_div(s).map_err(err)?;
        for _ in 0..250 {
            let seq = corpus.jobs(7, 4, 4);
            let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::SantaLeastLoaded, &seq)?;
            if alg < &bound * &opt {
                return Err(format!(
                    "least-loaded {alg} below ({bound})*optimum {opt} at s={s}, {seq:?}"
                ));
            }
        }
    }
    Ok(())
}

fn c10() -> Result<(), String> {
    for algorithm in [AlgorithmId::FirstFit, AlgorithmId::BestFit, AlgorithmId::WorstFit] {
        let report = run_experiment(&spec(
            ConstructionId::AnyfitLb,
            algorithm,
            sweep(&[2usize, 3, 4, 5, 6], |p, n| p.n = Some(n)),
            OptPreference::Witness,
        ))
        .map_err(err)?;
        // A and OPT_A must be affine in n with slopes 3 and 2; the branch
        // only shifts the constants.
        let base_alg = &report.rows[0].alg;
        let base_opt = report.rows[0].opt_a.as_ref().unwrap();
        for (i, row) in report.rows.iter().enumerate() {
            let shift = Rat::int(i as i64);
            if row.alg != base_alg + &(&Rat::int(3) * &shift) {
                return Err(format!("{algorithm} {}: A={} is not affine", row.params, row.alg));
            }
            if row.opt_a.as_ref() != Some(&(base_opt + &(&Rat::int(2) * &shift))) {
                return Err(format!(
                    "{algorithm} {}: OPT_A={:?} is not affine",
                    row.params, row.opt_a
                ));
            }
        }
        let fitted = fit_asymptotic(&report.rows).map_err(err)?;
        if fitted.c != rat(3, 2) || fitted.warning.is_some() {
            return Err(format!(
                "{algorithm}: fitted c={} warning={:?}",
                fitted.c, fitted.warning
            ));
        }
        // n = 2 is small enough for the exact search to confirm the witness.
        let confirm = run_experiment(&spec(
            ConstructionId::AnyfitLb,
            algorithm,
            sweep(&[2usize], |p, n| p.n = Some(n)),
            OptPreference::Both,
        ))
        .map_err(err)?;
        let row = &confirm.rows[0];
        if row.opt_source != OptSource::Both || row.opt_a != report.rows[0].opt_a {
            return Err(format!(
                "{algorithm} n=2: oracle gave {:?}, witness gave {:?}",
                row.opt_a, report.rows[0].opt_a
            ));
        }
    }
    Ok(())
}

fn c11() -> Result<(), String> {
    let mut params = ConstructionParams::default();
    params.q = Some(10);
    params.l = Some(10);
    let playout = crate::harness::experiment::play_construction(
        ConstructionId::CoveringLb,
        &params,
        AlgorithmId::CoveringGreedy,
    )
    .map_err(err)?;
    let instance = ProblemInstance::BinCovering;
    if playout.alg_trace.final_value != Rat::int(5) {
        return Err(format!("greedy covered {}, want 5", playout.alg_trace.final_value));
    }
    let witness = playout.witness.as_ref().ok_or("missing witness")?;
    let profile = prefix_profile(&playout.alg_trace, Direction::Max);
    let opt = oracle::check_witness(&instance, &playout.sequence, Some(&profile), witness)
        .map_err(err)?;
    if opt != Rat::int(10) {
        return Err(format!("witness covered {opt}, want 10"));
    }
    // Nobody covers a bin while only the small items have arrived.
    for t in 0..10 {
        if !playout.alg_trace.steps[t].value.is_zero() || !witness.steps[t].value.is_zero() {
            return Err(format!("nonzero prefix value during the small phase at step {t}"));
        }
    }
    Ok(())
}

fn c12() -> Result<(), String> {
    let instance = ProblemInstance::DualBinPacking { n: 2 };
    let config = SearchConfig::unlimited();
    let mut corpus = Corpus::new(0x1201);
    for _ in 0..300 {
        let seq = corpus.items(7, 8);
        for algorithm in [
            AlgorithmId::DualFirstFit,
            AlgorithmId::DualBestFit,
            AlgorithmId::DualWorstFit,
        ] {
            // The comparator is the prefix-constrained optimum: it packs at
            // least as many items as the policy at every point, which is
            // what makes the pairing swap preserve packability.
            let alg_trace = run_algorithm(&instance, algorithm, &seq).map_err(err)?;
            let profile = prefix_profile(&alg_trace, instance.direction());
            let bounded = oracle::solve_bounded(&instance, &seq, &profile, &config).map_err(err)?;
            let opt_value = bounded.require_complete().map_err(err)?.clone();
            let opt_trace = bounded.witness.as_ref().ok_or("missing optimum trace")?;
            let sub = accommodating_subsequence(&instance, &seq, &alg_trace, opt_trace)
                .map_err(err)?;
            if !is_accommodating(&instance, &sub, &config).map_err(err)? {
                return Err(format!("{algorithm}: subsequence of {seq:?} not accommodating"));
            }
            let alg_on_sub = run_algorithm(&instance, algorithm, &sub).map_err(err)?;
            if alg_on_sub.final_value != alg_trace.final_value {
                return Err(format!(
                    "{algorithm}: accepts {} on the subsequence vs {} on {seq:?}",
                    alg_on_sub.final_value, alg_trace.final_value
                ));
            }
            let opt_on_sub = oracle::solve_unconstrained(&instance, &sub, &config).map_err(err)?;
            if opt_on_sub.require_complete().map_err(err)? != &opt_value {
                return Err(format!("{algorithm}: optimum changed on the subsequence of {seq:?}"));
            }
        }
    }
    Ok(())
}

fn c13() -> Result<(), String> {
    let report = run_experiment(&spec(
        ConstructionId::UffLb,
        AlgorithmId::UnfairFirstFit,
        sweep(&[2usize, 3, 4], |p, n| p.n = Some(n)),
        OptPreference::Witness,
    ))
    .map_err(err)?;
    let mut previous: Option<Rat> = None;
    for (row, n) in report.rows.iter().zip([2i64, 3, 4]) {
        // With eps = 1/(24n), (1/2 - 2 eps)/eps = 12n - 2.
        let want = Rat::int(2 * n)
            .checked_div(&Rat::int(2 * n + (n - 1) * (12 * n - 2)))
            .map_err(err)?;
        if row.ratio.as_ref() != Some(&want) {
            return Err(format!("{}: ratio {:?}, want {want}", row.params, row.ratio));
        }
        if let Some(previous) = &previous {
            if &want >= previous {
                return Err(format!("ratio not strictly decreasing at {}", row.params));
            }
        }
        previous = Some(want);
    }
    Ok(())
}

fn c14() -> Result<(), String> {
    let instance = ProblemInstance::DualBinPacking { n: 2 };
    let mut corpus = Corpus::new(0x1201);
    for _ in 0..300 {
        let seq = corpus.items(7, 8);
        for algorithm in [AlgorithmId::DualFirstFit, AlgorithmId::DualBestFit] {
            let (alg, opt) = alg_and_bounded_opt(&instance, algorithm, &seq)?;
            if &Rat::int(2) * &alg < opt {
                return Err(format!("{algorithm}: {alg} below half of {opt} on {seq:?}"));
            }
        }
    }
    Ok(())
}

fn c15() -> Result<(), String> {
    use crate::core::problem::Decision;
    use crate::seatres::{fits_somewhere, SeatState};
    for (k, seats) in [(12u32, 8usize), (16, 8)] {
        let mut params = ConstructionParams::default();
        params.k = Some(k);
        params.seats = Some(seats);
        let playout = crate::harness::experiment::play_construction(
            ConstructionId::SeatresLb,
            &params,
            AlgorithmId::SeatFirstFit,
        )
        .map_err(err)?;
        let instance = ProblemInstance::SeatReservation { k, seats };
        let witness = playout.witness.as_ref().ok_or("missing witness")?;
        let profile = prefix_profile(&playout.alg_trace, Direction::Max);
        let opt = oracle::check_witness(&instance, &playout.sequence, Some(&profile), witness)
            .map_err(err)?;
        let ratio = playout
            .alg_trace
            .final_value
            .checked_div(&opt)
            .map_err(err)?;
        let bound = rat(11, k as i64 + 7);
        if ratio > bound {
            return Err(format!("k={k}: ratio {ratio} above {bound}"));
        }
        // The online player must have been fair: it only rejects when the
        // interval fits on no seat.
        let mut state = SeatState::new(k, seats);
        for (t, (request, step)) in playout
            .sequence
            .iter()
            .zip(playout.alg_trace.steps.iter())
            .enumerate()
        {
            match (&step.decision, request) {
                (Decision::AssignSeat(i), Request::Interval(a, b)) => state.place(*i, *a, *b),
                (Decision::Reject, _) => {
                    if fits_somewhere(&state, request) {
                        return Err(format!("k={k}: unfair rejection at step {}", t + 1));
                    }
                }
                _ => return Err(format!("k={k}: unexpected decision at step {}", t + 1)),
            }
        }
    }
    Ok(())
}

fn c16() -> Result<(), String> {
    let instance = ProblemInstance::Matching;
    let mut corpus = Corpus::new(0x1601);
    for _ in 0..500 {
        let seq = corpus.edges(8, 8);
        let (alg, opt) = alg_and_bounded_opt(&instance, AlgorithmId::MatchingGreedy, &seq)?;
        if alg != opt {
            return Err(format!("greedy weight {alg} vs optimum {opt} on {seq:?}"));
        }
    }
    Ok(())
}

fn c17() -> Result<(), String> {
    let config = SearchConfig::unlimited();
    let mut corpus = Corpus::new(0x1701);
    // (instance, profile-defining policy, sequences)
    let mut cases: Vec<(ProblemInstance, AlgorithmId, Vec<Vec<Request>>)> = Vec::new();
    let jobs: Vec<Vec<Request>> = (0..40).map(|_| corpus.jobs(6, 4, 4)).collect();
    let items: Vec<Vec<Request>> = (0..40).map(|_| corpus.items(6, 8)).collect();
    let edges: Vec<Vec<Request>> = (0..40).map(|_| corpus.edges(6, 6)).collect();
    cases.push((
        ProblemInstance::makespan_identical(3),
        AlgorithmId::GreedyIdentical,
        jobs.clone(),
    ));
    cases.push((
        ProblemInstance::makespan_related(Rat::int(2)),
        AlgorithmId::GreedyRelated,
        jobs.clone(),
    ));
    cases.push((
        ProblemInstance::santa_identical(3),
        AlgorithmId::SantaGreedy,
        jobs.clone(),
    ));
    cases.push((
        ProblemInstance::santa_related(Rat::int(2)),
        AlgorithmId::SantaLeastLoaded,
        jobs,
    ));
    cases.push((ProblemInstance::BinPacking, AlgorithmId::FirstFit, items.clone()));
    cases.push((ProblemInstance::BinCovering, AlgorithmId::CoveringGreedy, items.clone()));
    cases.push((
        ProblemInstance::DualBinPacking { n: 2 },
        AlgorithmId::DualFirstFit,
        items,
    ));
    cases.push((ProblemInstance::Matching, AlgorithmId::MatchingGreedy, edges));

    for (instance, algorithm, sequences) in cases {
        for seq in sequences {
            let engine = oracle::solve_unconstrained(&instance, &seq, &config).map_err(err)?;
            if engine.status != Status::Complete || engine.value != naive_best(&instance, &seq, None)
            {
                return Err(format!(
                    "unconstrained mismatch on {instance:?} {seq:?}: engine {:?}",
                    engine.value
                ));
            }
            let trace = run_algorithm(&instance, algorithm, &seq).map_err(err)?;
            let profile = prefix_profile(&trace, instance.direction());
            let engine = oracle::solve_bounded(&instance, &seq, &profile, &config).map_err(err)?;
            if engine.status != Status::Complete
                || engine.value != naive_best(&instance, &seq, Some(&profile))
            {
                return Err(format!(
                    "bounded mismatch on {instance:?} {seq:?}: engine {:?}",
                    engine.value
                ));
            }
        }
    }
    Ok(())
}
