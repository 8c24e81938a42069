//! `spinnet`: reproducible experiments on two-state recurrent networks.
//!
//! Subcommands: `hopfield run`, `hopfield hebbian`, `boltzmann sample`,
//! `boltzmann exact`, `spectral stationary`, `verify`. All structured
//! output is UTF-8 JSON on stdout; diagnostics go to stderr.
//!
//! Exit codes are stable and documented:
//! 0 success, 1 I/O or parse or validation error, 2 no convergence,
//! 3 scope rejection, 4 size guard, 5 verification failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spinnet_core::error::Error;
use spinnet_core::gibbs::{self, BoltzmannMachine, Temperature};
use spinnet_core::hopfield::{
    check_pairwise_orthogonal, hebbian, run_to_convergence_cyclic, run_to_convergence_fair,
    verify_pattern_stable, HopfieldParams,
};
use spinnet_core::io::{
    self, BoltzmannExactFile, CertificateFile, ConvergenceReportFile, ParamsFile,
};
use spinnet_core::network::{self, NetworkSpec, NetworkState, Params, Schedule, TwoState};
use spinnet_core::oracle::{boltzmann_distribution, total_variation};
use spinnet_core::rng::RngStream;
use spinnet_core::spectral::{stationary_distribution, NonNegMatrix};
use spinnet_core::verify;

const EXIT_NO_CONVERGENCE: u8 = 2;
const EXIT_SCOPE: u8 = 3;
const EXIT_SIZE_GUARD: u8 = 4;
const EXIT_VERIFY_FAILED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "spinnet",
    version,
    about = "Two-state recurrent network dynamics: deterministic recalls, Gibbs sampling, exact oracles, and spectral certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deterministic threshold dynamics and Hebbian storage
    Hopfield {
        #[command(subcommand)]
        command: HopfieldCommand,
    },
    /// Stochastic single-site dynamics and exact distributions
    Boltzmann {
        #[command(subcommand)]
        command: BoltzmannCommand,
    },
    /// Perron-Frobenius analysis of column-stochastic matrices
    Spectral {
        #[command(subcommand)]
        command: SpectralCommand,
    },
    /// Run the acceptance suite and report per-criterion results
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum HopfieldCommand {
    /// Run asynchronous updates from an initial state
    Run(HopfieldRunArgs),
    /// Store patterns with the Hebbian rule and emit network parameters
    Hebbian(HebbianArgs),
}

#[derive(Subcommand)]
enum BoltzmannCommand {
    /// Sample the random-scan chain and tally an empirical distribution
    Sample(SampleArgs),
    /// Emit the exact Boltzmann distribution and partition constant
    Exact(ExactArgs),
}

#[derive(Subcommand)]
enum SpectralCommand {
    /// Certified stationary distribution of a column-stochastic matrix
    Stationary(StationaryArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    /// activations in {-1, +1}
    Spin,
    /// activations in {0, 1}
    Binary,
}

impl DomainArg {
    fn domain(self) -> TwoState {
        match self {
            Self::Spin => TwoState::spin(),
            Self::Binary => TwoState::binary(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    /// repeat a permutation of all neurons (default: identity order)
    Cyclic,
    /// uniform random neuron choices from --seed
    Random,
    /// repeat the explicit --order list forever
    Repeat,
    /// apply the explicit --order list exactly once
    Once,
}

#[derive(Args)]
struct HopfieldRunArgs {
    /// Params JSON: { "n": .., "w": [..], "theta": [..] }
    #[arg(long)]
    params: PathBuf,
    /// Initial state: one line of space-separated activations
    #[arg(long)]
    init: PathBuf,
    #[arg(long, value_enum, default_value = "spin")]
    domain: DomainArg,
    #[arg(long, value_enum, default_value = "cyclic")]
    schedule: ScheduleArg,
    /// Comma-separated neuron indices (cyclic permutation or explicit list)
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Seed for --schedule random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Update budget for fair-schedule runs
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
}

#[derive(Args)]
struct HebbianArgs {
    /// Pattern file: one +1/-1 pattern per line
    #[arg(long)]
    patterns: PathBuf,
    /// Write params JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    params: PathBuf,
    /// Initial state file; defaults to the all-(-1) state
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long)]
    temperature: f64,
    #[arg(long)]
    steps: u64,
    /// Defaults to steps / 10
    #[arg(long)]
    burn_in: Option<u64>,
    #[arg(long, default_value_t = 1)]
    thin: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip tallying (lifts the n <= 20 guard); reports only the final state
    #[arg(long)]
    no_tally: bool,
    /// Write the visited state index after every step, one per line
    #[arg(long)]
    dump_trajectory: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    params: PathBuf,
    #[arg(long)]
    temperature: f64,
}

#[derive(Args)]
struct StationaryArgs {
    /// Matrix JSON: { "dim": k, "a": row-major k*k numbers }
    #[arg(long)]
    input: PathBuf,
    /// Certified residual bound on ||A v - v||_inf
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixture directory (defaults to ./fixtures)
    #[arg(long, default_value = "fixtures")]
    fixtures: PathBuf,
    /// Restrict to one criterion id or module tag (e.g. 7 or spectral)
    #[arg(long)]
    only: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::MaxStepsExceeded { .. }
        | Error::ConvergenceBoundViolation { .. }
        | Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
        Error::NotStochastic { .. }
        | Error::NotIrreducible
        | Error::NotUnique { .. }
        | Error::TieSite { .. } => EXIT_SCOPE,
        Error::StateSpaceTooLarge { .. } => EXIT_SIZE_GUARD,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Hopfield { command } => match command {
            HopfieldCommand::Run(args) => hopfield_run(args),
            HopfieldCommand::Hebbian(args) => hopfield_hebbian(args),
        },
        Command::Boltzmann { command } => match command {
            BoltzmannCommand::Sample(args) => boltzmann_sample(args),
            BoltzmannCommand::Exact(args) => boltzmann_exact(args),
        },
        Command::Spectral { command } => match command {
            SpectralCommand::Stationary(args) => spectral_stationary(args),
        },
        Command::Verify(args) => run_verify(args),
    }
}

#[derive(Serialize)]
struct WorkPhaseOutput {
    steps: usize,
    #[serde(rename = "final")]
    final_state: Vec<f64>,
    nets: Vec<f64>,
    stable: bool,
}

fn hopfield_run(args: HopfieldRunArgs) -> Result<ExitCode, Error> {
    let (w, theta) = io::read_params(&args.params)?;
    let domain = args.domain.domain();
    let init = io::read_state(&args.init, domain)?;
    let n = w.dim();

    if let ScheduleArg::Once = args.schedule {
        let order = args
            .order
            .ok_or_else(|| Error::Parse("--schedule once needs --order".into()))?;
        let spec = NetworkSpec::from_weight_support(&w, domain);
        let params = Params::new(&spec, w, theta)?;
        let final_state = network::work_phase(&spec, &params, &init, &order)?;
        let nets = (0..n)
            .map(|u| network::net_input(&spec, &params, &final_state, u))
            .collect();
        let stable = network::is_stable(&spec, &params, &final_state);
        let output = WorkPhaseOutput {
            steps: order.len(),
            final_state: final_state.act().to_vec(),
            nets,
            stable,
        };
        print!("{}", io::to_json(&output)?);
        return Ok(if stable {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_NO_CONVERGENCE)
        });
    }

    // convergence runs need the symmetric loop-free spin setting
    let hp = HopfieldParams::new(w, theta)?;
    let report = match args.schedule {
        ScheduleArg::Cyclic => {
            let order = args.order.unwrap_or_else(|| (0..n).collect());
            run_to_convergence_cyclic(&hp, &init, &order)?
        }
        ScheduleArg::Random => {
            run_to_convergence_fair(&hp, &init, &Schedule::seeded(args.seed), args.max_steps)?
        }
        ScheduleArg::Repeat => {
            let order = args
                .order
                .ok_or_else(|| Error::Parse("--schedule repeat needs --order".into()))?;
            run_to_convergence_fair(&hp, &init, &Schedule::explicit(order)?, args.max_steps)?
        }
        ScheduleArg::Once => unreachable!("handled above"),
    };
    print!("{}", io::to_json(&ConvergenceReportFile::from(&report))?);
    Ok(ExitCode::SUCCESS)
}

fn hopfield_hebbian(args: HebbianArgs) -> Result<ExitCode, Error> {
    let patterns = io::read_patterns(&args.patterns)?;
    if !check_pairwise_orthogonal(&patterns) {
        for i in 0..patterns.len() {
            for j in (i + 1)..patterns.len() {
                let dot: f64 = patterns[i]
                    .act()
                    .iter()
                    .zip(patterns[j].act())
                    .map(|(a, b)| a * b)
                    .sum();
                if dot != 0.0 {
                    eprintln!(
                        "patterns {i} and {j} are not orthogonal (dot product {dot}); \
                         only pairwise-orthogonal patterns are supported"
                    );
                }
            }
        }
        return Ok(ExitCode::from(EXIT_SCOPE));
    }
    let hp = hebbian(&patterns)?;
    eprintln!("n={} m={}", hp.n(), patterns.len());
    for (i, p) in patterns.iter().enumerate() {
        let stable = verify_pattern_stable(&hp, p);
        eprintln!(
            "pattern {i}: {}",
            if stable { "stable" } else { "UNSTABLE" }
        );
        let neg: Vec<f64> = p.act().iter().map(|a| -a).collect();
        let comp = NetworkState::new(neg, TwoState::spin())?;
        let comp_stable = verify_pattern_stable(&hp, &comp);
        eprintln!(
            "complement {i}: {}",
            if comp_stable { "stable" } else { "UNSTABLE" }
        );
    }
    let json = io::to_json(&ParamsFile::from_parts(hp.weights(), hp.thresholds()))?;
    match args.out {
        Some(path) => fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SampleOutput {
    n: usize,
    temperature: f64,
    steps: u64,
    burn_in: u64,
    thin: u64,
    seed: u64,
    tallied: u64,
    #[serde(rename = "final")]
    final_state: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tv_vs_exact: Option<f64>,
}

fn boltzmann_sample(args: SampleArgs) -> Result<ExitCode, Error> {
    let (w, theta) = io::read_params(&args.params)?;
    let m = BoltzmannMachine::new(w, theta)?;
    let n = m.n();
    let temp = Temperature::new(args.temperature)?;
    let init = match &args.init {
        Some(path) => io::read_state(path, TwoState::spin())?,
        None => NetworkState::from_spins(&vec![-1i8; n])?,
    };
    let burn_in = args.burn_in.unwrap_or(args.steps / 10);
    let mut rng = RngStream::new(args.seed);

    if args.no_tally {
        let final_state = gibbs::run_chain(&m, &init, temp, args.steps, &mut rng)?;
        let output = SampleOutput {
            n,
            temperature: temp.value(),
            steps: args.steps,
            burn_in: 0,
            thin: args.thin,
            seed: args.seed,
            tallied: 0,
            final_state: final_state.act().to_vec(),
            empirical: None,
            tv_vs_exact: None,
        };
        print!("{}", io::to_json(&output)?);
        return Ok(ExitCode::SUCCESS);
    }

    let (sample, trajectory) = if args.dump_trajectory.is_some() {
        let (s, traj) = gibbs::sample_chain_recorded(
            &m, &init, temp, args.steps, burn_in, args.thin, &mut rng,
        )?;
        (s, Some(traj))
    } else {
        (
            gibbs::sample_chain(&m, &init, temp, args.steps, burn_in, args.thin, &mut rng)?,
            None,
        )
    };
    if let (Some(path), Some(traj)) = (&args.dump_trajectory, &trajectory) {
        let mut text = String::with_capacity(traj.len() * 4);
        for idx in traj {
            text.push_str(&idx.to_string());
            text.push('\n');
        }
        fs::write(path, text)?;
    }
    let tv_vs_exact = if n <= 12 {
        let exact = boltzmann_distribution(&m, temp)?;
        Some(total_variation(
            sample.empirical.as_slice(),
            exact.pi.as_slice(),
        ))
    } else {
        None
    };
    let output = SampleOutput {
        n,
        temperature: temp.value(),
        steps: args.steps,
        burn_in,
        thin: args.thin,
        seed: args.seed,
        tallied: sample.tallied,
        final_state: sample.final_state.act().to_vec(),
        empirical: Some(sample.empirical.as_slice().to_vec()),
        tv_vs_exact,
    };
    print!("{}", io::to_json(&output)?);
    Ok(ExitCode::SUCCESS)
}

fn boltzmann_exact(args: ExactArgs) -> Result<ExitCode, Error> {
    let (w, theta) = io::read_params(&args.params)?;
    let m = BoltzmannMachine::new(w, theta)?;
    let temp = Temperature::new(args.temperature)?;
    let exact = boltzmann_distribution(&m, temp)?;
    print!("{}", io::to_json(&BoltzmannExactFile::from(&exact))?);
    Ok(ExitCode::SUCCESS)
}

fn spectral_stationary(args: StationaryArgs) -> Result<ExitCode, Error> {
    let matrix = io::read_matrix(&args.input)?;
    let a = NonNegMatrix::new(matrix)?;
    let result = stationary_distribution(&a, args.tol)?;
    print!(
        "{}",
        io::to_json(&CertificateFile::from(&result.certificate))?
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyCriterion {
    id: u32,
    name: &'static str,
    tags: Vec<&'static str>,
    passed: bool,
    details: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    criteria: Vec<VerifyCriterion>,
    passed: bool,
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let results = verify::run_all(&args.fixtures, args.only.as_deref());
    if results.is_empty() {
        return Err(Error::Parse(format!(
            "--only {:?} matches no criterion id or tag",
            args.only.unwrap_or_default()
        )));
    }
    for r in &results {
        eprintln!(
            "criterion {:>2} [{}] {} — {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.details
        );
    }
    let passed = results.iter().all(|r| r.passed);
    let output = VerifyOutput {
        criteria: results
            .into_iter()
            .map(|r| VerifyCriterion {
                id: r.id,
                name: r.name,
                tags: r.tags.to_vec(),
                passed: r.passed,
                details: r.details,
            })
            .collect(),
        passed,
    };
    print!("{}", io::to_json(&output)?);
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}
