//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification below `--min-fidelity`, 2 argument
//! errors, 3 file or parse errors, 4 a synthesized circuit failed its own
//! verification.

pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::Circuit;
use crate::dd::to_dot;
use crate::error::PrepError;
use crate::generators::{BenchmarkSpec, GeneratorRegistry};
use crate::register::QuditRegister;
use crate::simulator;
use crate::state::StateVector;
use crate::synthesis::{synthesize, SynthesisMode, SynthesisReport, Variant};
use crate::tolerance::ToleranceConfig;

use bench::{render_csv, render_markdown, run_suite, BenchConfig, BenchSuite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BELOW_MIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_UNVERIFIED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qudit-prep", version, about = "Mixed-dimensional qudit state preparation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a preparation circuit for a state.
    Prepare(PrepareArgs),
    /// Simulate a circuit and report its fidelity against a state.
    Verify(VerifyArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
    /// Write a generated state in the state JSON format.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// State JSON file.
    #[arg(long, conflicts_with = "generator", required_unless_present = "generator")]
    state: Option<PathBuf>,
    /// Generator family (ghz, w, embedded_w, random).
    #[arg(long, requires = "dims")]
    generator: Option<String>,
    /// Comma-separated qudit dimensions, most significant first.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct PrepareArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Target fidelity in (0, 1]; 1.0 synthesizes exactly.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    fidelity: f64,
    /// Preparation strategy; defaults to `exact` at fidelity 1 and `approx` otherwise.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    prune_identity: bool,
    #[arg(long)]
    merge_shared: bool,
    /// Graphviz export of the synthesized diagram.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    min_fidelity: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Table1,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    suite: Option<Suite>,
    /// JSON list of benchmarks, or {"threshold": f, "benchmarks": [...]}.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print 0 in the time column so output is byte-identical across runs.
    #[arg(long)]
    no_time: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    generator: String,
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>, subcommand: &str) -> Self {
        let mut cmd = Cli::command();
        let usage = cmd
            .find_subcommand_mut(subcommand)
            .map(|c| c.render_usage().to_string())
            .unwrap_or_default();
        Self { code: EXIT_USAGE, message: format!("error: {}\n\n{usage}", message.into()) }
    }

    fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: format!("error: {}", message.into()) }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn load_state(path: &Path, tol: &ToleranceConfig) -> Result<StateVector, Failure> {
    let text = read_file(path)?;
    StateVector::from_json(&text)
        .and_then(|s| s.normalized(tol))
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn generated_state(name: &str, dims: Vec<usize>, seed: u64, sub: &str) -> Result<StateVector, Failure> {
    let registry = GeneratorRegistry::with_builtins();
    let spec = BenchmarkSpec { family: name.to_string(), dims, seed: Some(seed) };
    let reg = QuditRegister::new(spec.dims.clone()).map_err(|e| Failure::usage(e.to_string(), sub))?;
    let generator = registry.get(name).map_err(|e| {
        let known: Vec<_> = registry.names().collect();
        Failure::usage(format!("{e}; known generators: {}", known.join(", ")), sub)
    })?;
    Ok(generator.generate(&reg, seed))
}

#[derive(Serialize)]
struct Stats<'a> {
    dims: &'a [usize],
    #[serde(flatten)]
    report: &'a SynthesisReport,
}

fn prepare(args: PrepareArgs, tol: &ToleranceConfig) -> Result<i32, Failure> {
    if !(args.fidelity > 0.0 && args.fidelity <= 1.0) {
        return Err(Failure::usage(format!("--fidelity must lie in (0, 1], got {}", args.fidelity), "prepare"));
    }
    let variant = match args.strategy.as_deref() {
        None if args.fidelity >= 1.0 => Variant::Exact,
        None | Some("approx") => Variant::Approx { threshold: args.fidelity },
        Some("exact") if args.fidelity >= 1.0 => Variant::Exact,
        Some("exact") => {
            return Err(Failure::usage("the exact strategy requires --fidelity 1.0", "prepare"));
        }
        Some(other) => {
            return Err(Failure::usage(format!("unknown strategy `{other}` (exact, approx)"), "prepare"));
        }
    };
    let state = match (&args.source.state, &args.source.generator) {
        (Some(path), _) => load_state(path, tol)?,
        (None, Some(name)) => {
            let dims = args.source.dims.clone().unwrap_or_default();
            generated_state(name, dims, args.source.seed, "prepare")?
        }
        (None, None) => return Err(Failure::usage("provide --state or --generator", "prepare")),
    };
    let mode = SynthesisMode {
        variant,
        prune_identity: args.prune_identity,
        merge_shared_siblings: args.merge_shared,
    };
    let out = synthesize(&state, &mode, tol).map_err(|e| match e {
        PrepError::DegenerateState { .. } | PrepError::Parse(_) => Failure::io(e.to_string()),
        PrepError::Parameter(_) => Failure::usage(e.to_string(), "prepare"),
        other => Failure { code: EXIT_UNVERIFIED, message: format!("error: {other}") },
    })?;

    let floor = mode.variant.threshold() - tol.eps_verify;
    if out.report.fidelity < floor {
        return Err(Failure {
            code: EXIT_UNVERIFIED,
            message: format!(
                "error: synthesized circuit reaches fidelity {:.12}, below the requested {}",
                out.report.fidelity,
                mode.variant.threshold()
            ),
        });
    }

    write_file(&args.out, &out.circuit.to_json())?;
    if let Some(path) = &args.stats {
        let stats = Stats { dims: state.register().dims(), report: &out.report };
        let text = serde_json::to_string_pretty(&stats).expect("stats serialize");
        write_file(path, &text)?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &to_dot(&out.dd))?;
    }
    println!(
        "{} ops, median controls {}, fidelity {:.12}",
        out.report.operations, out.report.controls_median, out.report.fidelity
    );
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, tol: &ToleranceConfig) -> Result<i32, Failure> {
    let text = read_file(&args.circuit)?;
    let circuit = Circuit::from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", args.circuit.display())))?;
    let state = load_state(&args.state, tol)?;
    let f = simulator::verify(&circuit, &state).map_err(|e| Failure::io(e.to_string()))?;
    println!("{f:.12}");
    Ok(if f >= args.min_fidelity { EXIT_OK } else { EXIT_BELOW_MIN })
}

fn bench(args: BenchArgs, tol: &ToleranceConfig) -> Result<i32, Failure> {
    if args.runs == 0 {
        return Err(Failure::usage("--runs must be at least 1", "bench"));
    }
    let suite = match (&args.suite, &args.spec) {
        (Some(Suite::Table1), _) => BenchSuite::table1(),
        (None, Some(path)) => BenchSuite::from_json(&read_file(path)?).map_err(|e| Failure::io(e.to_string()))?,
        (None, None) => return Err(Failure::usage("provide --suite or --spec", "bench")),
    };
    if !(suite.threshold > 0.0 && suite.threshold <= 1.0) {
        return Err(Failure::io(format!("spec threshold {} outside (0, 1]", suite.threshold)));
    }
    let registry = GeneratorRegistry::with_builtins();
    let rows = run_suite(&suite, BenchConfig { runs: args.runs, base_seed: args.seed }, &registry, tol)
        .map_err(|e| match e {
            PrepError::Contract(_) => Failure { code: EXIT_UNVERIFIED, message: format!("error: {e}") },
            _ => Failure::io(e.to_string()),
        })?;
    let text = match args.format {
        Format::Csv => render_csv(&rows, !args.no_time),
        Format::Md => render_markdown(&rows, !args.no_time),
    };
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn generate(args: GenerateArgs) -> Result<i32, Failure> {
    let state = generated_state(&args.generator, args.dims, args.seed, "generate")?;
    write_file(&args.out, &state.to_json())?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let tol = ToleranceConfig::default();
    let result = match cli.command {
        Command::Prepare(a) => prepare(a, &tol),
        Command::Verify(a) => verify(a, &tol),
        Command::Bench(a) => bench(a, &tol),
        Command::Generate(a) => generate(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}
