use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use fpqaoa::lattice::Permutation;
use fpqaoa::numtheory::first_primes;
use fpqaoa::pipeline::{
    benchmark_collection_rate, factor, read_record, read_trace, replay, training_set,
    write_curves_csv, Instance, RunConfig, RunRecord, SamplerKind,
};
use fpqaoa::qaoa::{export_circuit_text, train_fixed_angles, MixerSign, QaoaAngles, TrainingConfig};
use fpqaoa::relations::FactorResult;
use fpqaoa::Error;

/// Exit status when the circuit budget runs out before `N` splits.
const NOT_FACTORED: u8 = 3;

#[derive(Parser)]
#[command(name = "fpqaoa", version, about = "Lattice factoring with fixed-angle QAOA sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor an integer with the lattice and sampling loop.
    Factor(FactorArgs),
    /// Compare sr-pair collection rates of several samplers.
    Bench(BenchArgs),
    /// Search for shared QAOA angles on a family of random instances.
    Train(TrainArgs),
    /// Write the circuit of every step block in a run record as text.
    ExportCircuits(ExportArgs),
    /// Re-derive sr-pairs and the factorization from recorded measurements.
    Replay(ReplayArgs),
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Integer to factor.
    #[arg(long = "N", default_value = "1591")]
    modulus: BigUint,
    /// Qubits, equal to the lattice factor base size.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Factor base size for the smoothness test.
    #[arg(long, default_value_t = 11)]
    b2: usize,
    /// Log scaling exponent, as a decimal or a fraction.
    #[arg(long, default_value = "1.5", value_parser = parse_rational)]
    c: BigRational,
    /// LLL parameter, as a decimal or a fraction.
    #[arg(long, default_value = "0.75", value_parser = parse_rational)]
    delta: BigRational,
}

#[derive(Args, Clone)]
struct SamplingArgs {
    /// Shots per circuit.
    #[arg(long, default_value_t = 5)]
    shots: usize,
    #[arg(long, default_value_t = QaoaAngles::REFERENCE.gamma)]
    gamma: f64,
    #[arg(long, default_value_t = QaoaAngles::REFERENCE.beta)]
    beta: f64,
    /// Sign convention of the mixing rotation.
    #[arg(long, value_enum, default_value_t = Mixer::Minimizing)]
    mixer: Mixer,
    /// Seed for every random choice.
    #[arg(long, env = "FPQAOA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mixer {
    Minimizing,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampler {
    Emulator,
    Uniform,
}

impl From<Sampler> for SamplerKind {
    fn from(s: Sampler) -> Self {
        match s {
            Sampler::Emulator => SamplerKind::Emulator,
            Sampler::Uniform => SamplerKind::Uniform,
        }
    }
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, value_enum, default_value_t = Sampler::Emulator)]
    sampler: Sampler,
    #[arg(long, default_value_t = 200)]
    max_circuits: usize,
    /// Write the run record here, one JSON object per step.
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Sampler::Emulator, Sampler::Uniform])]
    samplers: Vec<Sampler>,
    /// Shots per trial.
    #[arg(long, default_value_t = 300)]
    shot_budget: usize,
    /// CSV destination for the mean collection curves.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    /// Integer whose instances form the training set.
    #[arg(long = "train-N", default_value = "48567227")]
    train_modulus: BigUint,
    #[arg(long, default_value_t = 100)]
    train_size: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value = "4", value_parser = parse_rational)]
    c: BigRational,
    #[arg(long, default_value = "0.75", value_parser = parse_rational)]
    delta: BigRational,
    #[arg(long, value_enum, default_value_t = Mixer::Minimizing)]
    mixer: Mixer,
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    #[arg(long, env = "FPQAOA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = QaoaAngles::REFERENCE.gamma)]
    gamma: f64,
    #[arg(long, default_value_t = QaoaAngles::REFERENCE.beta)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = Mixer::Minimizing)]
    mixer: Mixer,
    #[arg(long)]
    record: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ReplayArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long)]
    trace: PathBuf,
    /// Write the re-derived record here.
    #[arg(long)]
    record: Option<PathBuf>,
}

/// Accepts `3/2`, `1.5` or `4`, exactly.
fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("{s:?} is not a decimal or a fraction");
    if s.contains('/') {
        return s.parse().map_err(|_| bad());
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.starts_with(['+', '-']) || int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32)))
}

fn mixer(m: Mixer) -> MixerSign {
    match m {
        Mixer::Minimizing => MixerSign::Minimizing,
        Mixer::Literal => MixerSign::Literal,
    }
}

fn run_config(problem: &ProblemArgs, sampling: Option<&SamplingArgs>) -> RunConfig {
    let mut cfg = RunConfig {
        modulus: problem.modulus.clone(),
        n: problem.n,
        b2: problem.b2,
        c: problem.c.clone(),
        delta: problem.delta.clone(),
        ..RunConfig::default()
    };
    if let Some(s) = sampling {
        cfg.shots_per_circuit = s.shots;
        cfg.angles = QaoaAngles::new(s.gamma, s.beta);
        cfg.mixer = mixer(s.mixer);
        cfg.seed = s.seed;
    }
    cfg
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::File { path: path.to_owned(), source })
}

fn open(path: &Path) -> Result<BufReader<File>, Error> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::File { path: path.to_owned(), source })
}

fn print_split(modulus: &BigUint, r: &FactorResult) {
    println!("{modulus} = {} × {}", r.p, r.q);
}

fn print_pairs(record: &RunRecord) {
    for s in &record.steps {
        if let Some((u, v)) = &s.sr_pair {
            println!("step {:>4}  circuit {:>3}  {}  ({u}, {v})", s.step, s.circuit, s.bitstring);
        }
    }
}

fn summarize(modulus: &BigUint, record: &RunRecord) -> ExitCode {
    let pairs = record.steps.last().map_or(0, |s| s.n_pairs);
    match (&record.result, record.first_factored_step()) {
        (Some(r), Some(step)) => {
            print_split(modulus, r);
            println!("{pairs} sr-pairs, factored at step {step} after {} circuits", record.circuits());
            ExitCode::SUCCESS
        }
        (Some(r), None) => {
            print_split(modulus, r);
            ExitCode::SUCCESS
        }
        (None, _) => {
            println!("{modulus} not factored: {pairs} sr-pairs from {} circuits", record.circuits());
            ExitCode::from(NOT_FACTORED)
        }
    }
}

fn cmd_factor(args: FactorArgs) -> Result<ExitCode, Error> {
    let cfg = RunConfig {
        sampler: args.sampler.into(),
        max_circuits: args.max_circuits,
        ..run_config(&args.problem, Some(&args.sampling))
    };
    let record = factor(&cfg)?;
    if let Some(path) = &args.record {
        record.write_jsonl(create(path)?)?;
    }
    Ok(summarize(&cfg.modulus, &record))
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let cfg = run_config(&args.problem, Some(&args.sampling));
    let samplers: Vec<SamplerKind> = args.samplers.iter().map(|&s| s.into()).collect();
    let curves = benchmark_collection_rate(&cfg, &samplers, args.trials, args.shot_budget)?;
    for c in &curves {
        let last = c.mean_pairs.last().copied().unwrap_or(0.0);
        match c.threshold_stats() {
            Some((mean, se)) => println!(
                "{:<9} {} of {} trials reached {} pairs, mean {mean:.1} ± {se:.1} shots; {last:.2} pairs after {} shots",
                c.sampler.label(),
                c.reached(),
                c.trials,
                cfg.b2 + 1,
                args.shot_budget
            ),
            None => println!(
                "{:<9} no trial reached {} pairs; {last:.2} pairs after {} shots",
                c.sampler.label(),
                cfg.b2 + 1,
                args.shot_budget
            ),
        }
    }
    if let Some(path) = &args.out {
        write_curves_csv(&curves, create(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_train(args: TrainArgs) -> Result<ExitCode, Error> {
    let cfg = RunConfig {
        modulus: args.train_modulus.clone(),
        n: args.n,
        b2: args.n,
        c: args.c,
        delta: args.delta,
        seed: args.seed,
        ..RunConfig::default()
    };
    let set = training_set(&cfg, args.train_size)?;
    let outcome = train_fixed_angles(
        &set,
        &TrainingConfig {
            seed: args.seed,
            restarts: args.restarts,
            mixer: mixer(args.mixer),
            ..TrainingConfig::default()
        },
    )?;
    println!("gamma = {:.4}", outcome.angles.gamma);
    println!("beta  = {:.4}", outcome.angles.beta);
    println!(
        "min P_q/P_c = {:.3} over {} instances (start {:.3}, {} evaluations)",
        outcome.min_ratio,
        set.len(),
        outcome.initial_min_ratio,
        outcome.evaluations
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode, Error> {
    let cfg = run_config(&args.problem, None);
    cfg.validate()?;
    let record = read_record(open(&args.record)?)?;
    let base = first_primes(cfg.n)?;
    let mut blocks: BTreeMap<usize, Permutation> = BTreeMap::new();
    for s in &record.steps {
        blocks.entry(s.circuit).or_insert_with(|| s.permutation.clone());
    }
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|source| Error::File { path: args.out_dir.clone(), source })?;
    let angles = QaoaAngles::new(args.gamma, args.beta);
    for (k, sigma) in blocks {
        let inst = Instance::build(&cfg.modulus, &base, &cfg.c, &cfg.delta, cfg.babai, sigma)?;
        match inst.circuit(&angles, mixer(args.mixer))? {
            Some(circuit) => {
                let path = args.out_dir.join(format!("circuit_{k:03}.txt"));
                std::fs::write(&path, export_circuit_text(&circuit))
                    .map_err(|source| Error::File { path: path.clone(), source })?;
                println!("{}", path.display());
            }
            None => println!("circuit {k}: degenerate instance, nothing to write"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_replay(args: ReplayArgs) -> Result<ExitCode, Error> {
    let cfg = run_config(&args.problem, None);
    let trace = read_trace(open(&args.trace)?)?;
    let record = replay(&trace, &cfg)?;
    print_pairs(&record);
    if let Some(path) = &args.record {
        record.write_jsonl(create(path)?)?;
    }
    Ok(summarize(&cfg.modulus, &record))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Factor(a) => cmd_factor(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Train(a) => cmd_train(a),
        Command::ExportCircuits(a) => cmd_export(a),
        Command::Replay(a) => cmd_replay(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
