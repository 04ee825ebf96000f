mod commands;
mod json;
mod output;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::commands::{CommandError, Outcome};
use crate::output::Report;

#[derive(Parser, Debug)]
#[command(name = "spectral-affine", version, about = "Exact spectral analysis of self-affine measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Exact zero set of the mask m_D on the torus.
    ZeroSet,
    /// Search for S making (M, D, S) a Hadamard triple.
    FindHadamard,
    /// Check whether (M, D, S) is a Hadamard triple.
    VerifyTriple,
    /// Build the conjugate pair (AMB, B^{-1}D) or (AMB, AD).
    Conjugate,
    /// Mod-3 class of a planar matrix and the three-digit spectrality test.
    Classify,
    /// Spectrality of a planar three-digit measure.
    #[command(name = "criterion-1-8")]
    Criterion,
    /// Decide whether infinitely many orthogonal exponentials exist.
    InfiniteOrthogonal,
    /// Bounds on the maximal number of orthogonal exponentials.
    Nstar,
    /// Check a non-spectrality certificate (L, j0).
    NonspectralCert,
    /// Check zero-set transport between a conjugate pair.
    TransportCheck,
    /// Evaluate the Fourier transform of the measure at the points xi.
    FourierEval,
    /// Sample the attractor T(M, D).
    Attractor,
    /// Build a candidate spectrum from a base set C and check orthogonality.
    Spectrum,
    /// Evaluate Q over a grid around the origin.
    QScan,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::ZeroSet => "zero-set",
            Self::FindHadamard => "find-hadamard",
            Self::VerifyTriple => "verify-triple",
            Self::Conjugate => "conjugate",
            Self::Classify => "classify",
            Self::Criterion => "criterion-1-8",
            Self::InfiniteOrthogonal => "infinite-orthogonal",
            Self::Nstar => "nstar",
            Self::NonspectralCert => "nonspectral-cert",
            Self::TransportCheck => "transport-check",
            Self::FourierEval => "fourier-eval",
            Self::Attractor => "attractor",
            Self::Spectrum => "spectrum",
            Self::QScan => "q-scan",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Json,
    Text,
}

/// Flags override the matching fields of the problem file.
#[derive(clap::Args, Debug, Clone, Default)]
struct Options {
    /// Problem file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    /// Worker threads; falls back to SPECTRAL_AFFINE_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Truncation depth of the Fourier product, or transport depth.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Levels of the spectrum candidate or digit expansion.
    #[arg(long, global = true)]
    levels: Option<u32>,
    /// Half-width of the Q-scan grid, as an integer or num/den.
    #[arg(long, global = true)]
    eta: Option<BigRational>,
    /// Points per axis of the Q-scan grid.
    #[arg(long, global = true)]
    grid: Option<u32>,
    /// Chaos-game seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest power in n* witness candidates.
    #[arg(long = "J", global = true)]
    j: Option<u32>,
    /// Box radius for n* witness candidates.
    #[arg(long = "R", global = true)]
    r: Option<u32>,
    /// Search node budget.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Extra denominators to scan for zeros, comma separated.
    #[arg(long = "q-hints", global = true, value_delimiter = ',')]
    q_hints: Option<Vec<u64>>,
    /// Write point clouds and Q grids to this CSV file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CommandError> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var("SPECTRAL_AFFINE_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CommandError::usage(format!("SPECTRAL_AFFINE_THREADS={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CommandError> {
    let path = cli.opts.input.as_ref().ok_or_else(|| CommandError::usage("--input is required"))?;
    let problem = problem::parse_problem(path)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(cli.opts.threads)? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CommandError::usage(e.to_string()))?;
    pool.install(|| commands::dispatch(cli.command, &problem, &cli.opts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = start.elapsed().as_millis() as u64;
    let (report, code) = match result {
        Ok(outcome) => {
            if let (Some(path), Some(csv)) = (&cli.opts.csv, &outcome.csv) {
                if let Err(e) = std::fs::write(path, csv) {
                    let err = CommandError::io(path, e);
                    return finish(&cli, Report::failure(cli.command.name(), &err, elapsed), 1);
                }
            }
            let code = if outcome.undetermined { 2 } else { 0 };
            (Report::success(cli.command.name(), outcome, elapsed), code)
        }
        Err(e) => (Report::failure(cli.command.name(), &e, elapsed), 1),
    };
    finish(&cli, report, code)
}

fn finish(cli: &Cli, report: Report, code: u8) -> ExitCode {
    let text = match cli.opts.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    println!("{text}");
    ExitCode::from(code)
}
