//! `gaussdist`: the distance law for Gaussian point pairs on the command
//! line.
//!
//! Exit statuses: 0 success, 1 statistical test failed, 2 usage error,
//! 3 I/O or input-data error.

mod commands;
mod dataset;
mod error;
mod format;
mod sample_file;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use commands::{FigureArg, Method, Which};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "gaussdist",
    version,
    about = "Distances between random Gaussian points"
)]
struct Cli {
    /// Worker threads for the parallel kernels. Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate pdf, cdf, survival or quantile.
    Eval(EvalArgs),
    /// Raw and central moments, skewness and kurtosis.
    Moments(MomentsArgs),
    /// Write a sample file.
    Sample(SampleArgs),
    /// KS-test a sample file against the law (exit 1 on rejection).
    Test(TestArgs),
    /// Fit report for a delimited dataset, as JSON.
    Diagnose(DiagnoseArgs),
    /// Density curves for plotting, with a JSON metadata sidecar.
    Plotdata(PlotArgs),
    /// Relative contrast of nearest and farthest neighbours.
    Contrast(ContrastArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("points").required(true).args(["grid", "at"])))]
struct EvalArgs {
    which: Which,
    #[arg(long)]
    k: f64,
    /// start:stop:step
    #[arg(long)]
    grid: Option<String>,
    /// Explicit distances (or probabilities for quantile), comma separated.
    #[arg(long, visible_alias = "p", value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    at: Vec<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    k: Vec<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    k: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    method: Method,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TestArgs {
    file: PathBuf,
    #[arg(long)]
    k: f64,
    /// Print the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    file: PathBuf,
    /// Field delimiter; a single character or "tab".
    #[arg(long, default_value = ",")]
    delimiter: String,
    /// Require the data to be standardized already instead of standardizing it.
    #[arg(long)]
    no_standardize: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    figure: FigureArg,
    /// Delimited data file; metadata goes to the same path with a .json extension.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct ContrastArgs {
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1,10,100,1000")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    n_points: usize,
    /// Number of seeds, starting at --seed.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_delimiter(text: &str) -> CliResult<u8> {
    match text {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        _ if text.len() == 1 && text.is_ascii() => Ok(text.as_bytes()[0]),
        _ => Err(CliError::usage(format!(
            "delimiter must be a single ASCII character, got '{text}'"
        ))),
    }
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::usage("--threads must be at least 1"));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure {n} threads: {e}")))?;
    Ok(())
}

fn with_output(
    path: Option<&std::path::Path>,
    f: impl FnOnce(&mut dyn Write) -> CliResult<u8>,
) -> CliResult<u8> {
    let mut out = commands::open_output(path)?;
    let code = f(&mut *out)?;
    out.flush()?;
    Ok(code)
}

fn run(cli: Cli) -> CliResult<u8> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Eval(a) => {
            let points = match &a.grid {
                Some(spec) => commands::parse_grid(spec)?,
                None => a.at.clone(),
            };
            with_output(a.output.as_deref(), |out| {
                commands::eval(out, a.which, a.k, &points)
            })
        }
        Command::Moments(a) => with_output(a.output.as_deref(), |out| commands::moments(out, &a.k)),
        Command::Sample(a) => with_output(a.output.as_deref(), |out| {
            commands::sample(out, a.k, a.n, a.seed, a.method)
        }),
        Command::Test(a) => with_output(a.output.as_deref(), |out| {
            commands::test(out, &a.file, a.k, a.json)
        }),
        Command::Diagnose(a) => {
            let delimiter = parse_delimiter(&a.delimiter)?;
            with_output(a.output.as_deref(), |out| {
                commands::diagnose(out, &a.file, delimiter, !a.no_standardize)
            })
        }
        Command::Plotdata(a) => commands::plotdata(a.figure.into(), &a.output),
        Command::Contrast(a) => with_output(a.output.as_deref(), |out| {
            commands::contrast(out, &a.k, a.n_points, a.seeds, a.seed)
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gaussdist: {e}");
            e.exit_code()
        }
    }
}
