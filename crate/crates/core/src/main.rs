use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use oba::core::problem::{ProblemInstance, Request};
use oba::core::rational::Rat;
use oba::core::run::{run_algorithm, AlgorithmId};
use oba::core::trace::{prefix_profile, PrefixProfile};
use oba::harness::experiment::{
    run_experiment, ConstructionId, ConstructionParams, ExperimentSpec, OptPreference,
};
use oba::harness::{self, report};
use oba::oracle::{self, SearchConfig};

/// Run online algorithms, solve for the prefix-constrained offline optimum,
/// and reproduce the bundled lower-bound constructions.
#[derive(Parser)]
#[command(name = "oba", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an online algorithm over a request sequence and dump its trace.
    Run(RunArgs),
    /// Solve for the exact offline optimum, bounded or unconstrained.
    Oracle(OracleArgs),
    /// Replay a bundled construction against an algorithm and report ratios.
    Reproduce(ReproduceArgs),
    /// Run the full acceptance checklist.
    Verify,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file holding the problem instance.
    #[arg(long)]
    instance: PathBuf,
    /// JSON file holding the request sequence.
    #[arg(long)]
    sequence: PathBuf,
    #[arg(long)]
    algorithm: AlgorithmId,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    sequence: PathBuf,
    /// JSON file holding a prefix profile to respect.
    #[arg(long, conflicts_with = "algorithm")]
    profile: Option<PathBuf>,
    /// Derive the prefix profile from this algorithm's run; omit both this
    /// and --profile for the unconstrained optimum.
    #[arg(long)]
    algorithm: Option<AlgorithmId>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum OptChoice {
    Oracle,
    Witness,
    Both,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long)]
    construction: ConstructionIdArg,
    #[arg(long)]
    algorithm: AlgorithmId,
    /// Machine count (makespan constructions).
    #[arg(long)]
    m: Option<usize>,
    /// Speed ratio (related-machine constructions), as p/q.
    #[arg(long)]
    s: Option<Rat>,
    /// Round/bin count (packing constructions).
    #[arg(long)]
    n: Option<usize>,
    /// Station count (seat reservation).
    #[arg(long)]
    k: Option<u32>,
    /// Seat count (seat reservation).
    #[arg(long)]
    seats: Option<usize>,
    /// Small-item count (bin covering).
    #[arg(long)]
    q: Option<usize>,
    /// Large-item count (bin covering); must divide q.
    #[arg(long = "L")]
    l: Option<usize>,
    /// RNG seed (random constructions).
    #[arg(long)]
    seed: Option<u64>,
    /// Sequence length (random constructions).
    #[arg(long)]
    size: Option<usize>,
    /// Comma-separated values for the construction's primary parameter.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "both")]
    opt: OptChoice,
    /// Fit A = c * OPT_A + alpha over the sweep.
    #[arg(long)]
    asymptotic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the generated request sequence (single-point runs only).
    #[arg(long)]
    dump_sequence: Option<PathBuf>,
}

/// Thin clap shim: ConstructionId already parses from its kebab-case id.
#[derive(Clone, Copy)]
struct ConstructionIdArg(ConstructionId);

impl std::str::FromStr for ConstructionIdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<ConstructionIdArg, String> {
        s.parse().map(ConstructionIdArg).map_err(|_| {
            let ids: Vec<&str> = ConstructionId::ALL.iter().map(|id| id.as_str()).collect();
            format!("unknown construction {s:?}; one of: {}", ids.join(", "))
        })
    }
}

fn read_instance(path: &PathBuf) -> Result<ProblemInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let instance: ProblemInstance =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    instance.validate()?;
    Ok(instance)
}

fn read_sequence(path: &PathBuf) -> Result<Vec<Request>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let instance = read_instance(&args.instance)?;
    let sequence = read_sequence(&args.sequence)?;
    let trace = run_algorithm(&instance, args.algorithm, &sequence)?;
    let mut text = serde_json::to_string_pretty(&trace)?;
    text.push('\n');
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(args: &OracleArgs) -> Result<ExitCode> {
    let instance = read_instance(&args.instance)?;
    let sequence = read_sequence(&args.sequence)?;
    let config = SearchConfig::default();
    let profile: Option<PrefixProfile> = match (&args.profile, args.algorithm) {
        (Some(path), None) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(serde_json::from_str(&text)?)
        }
        (None, Some(algorithm)) => {
            let trace = run_algorithm(&instance, algorithm, &sequence)?;
            Some(prefix_profile(&trace, instance.direction()))
        }
        (None, None) => None,
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let result = match &profile {
        Some(profile) => oracle::solve_bounded(&instance, &sequence, profile, &config)?,
        None => oracle::solve_unconstrained(&instance, &sequence, &config)?,
    };
    let mut text = serde_json::to_string_pretty(&result)?;
    text.push('\n');
    emit(&text, &args.out)?;
    Ok(match result.status {
        oracle::Status::Complete | oracle::Status::Infeasible => ExitCode::SUCCESS,
        oracle::Status::BudgetExhausted => ExitCode::from(2),
    })
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<ExitCode> {
    let construction = args.construction.0;
    let base = ConstructionParams {
        m: args.m,
        s: args.s.clone(),
        n: args.n,
        k: args.k,
        seats: args.seats,
        q: args.q,
        l: args.l,
        seed: args.seed,
        size: args.size,
    };
    let sweep: Vec<ConstructionParams> = args
        .sweep
        .iter()
        .map(|token| base.with_sweep_value(construction, token))
        .collect::<Result<_, _>>()?;
    if let Some(path) = &args.dump_sequence {
        if sweep.len() > 1 {
            bail!("--dump-sequence needs a single sweep point");
        }
        let params = sweep.first().unwrap_or(&base);
        let playout =
            harness::experiment::play_construction(construction, params, args.algorithm)?;
        let mut text = serde_json::to_string_pretty(&playout.sequence)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let spec = ExperimentSpec {
        construction,
        algorithm: args.algorithm,
        sweep,
        oracle_config: SearchConfig::default(),
        opt_preference: match args.opt {
            OptChoice::Oracle => OptPreference::Oracle,
            OptChoice::Witness => OptPreference::Witness,
            OptChoice::Both => OptPreference::Both,
        },
        asymptotic: args.asymptotic,
    };
    let result = run_experiment(&spec)?;
    let text = match args.format {
        Format::Csv => report::to_csv(&result),
        Format::Json => report::to_json(&result),
        Format::Markdown => report::to_markdown(&result),
    };
    emit(&text, &args.out)?;
    Ok(if result.has_unresolved() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify() -> ExitCode {
    let mut failures = 0;
    for (index, name, outcome) in harness::verify::run_all() {
        match outcome {
            Ok(()) => println!("{index:2}. {name}: pass"),
            Err(reason) => {
                failures += 1;
                println!("{index:2}. {name}: FAIL ({reason})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Verify => return cmd_verify(),
    };
    match outcome {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}
