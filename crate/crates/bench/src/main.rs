use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phaseshift_bench::runner::format_summary;
use phaseshift_bench::{
    baseline_dense, emit_svg, parse_size, run_plan, summarize, write_records, AdaptiveArg,
    BenchError, EngineTemplate, ExperimentPlan, MonotonicClock, Sweep, Table, TrialRecord,
    VariantArg,
};

#[derive(Parser)]
#[command(name = "phaseshift-bench", version, about = "Sparse FFT experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep of sparse recoveries and write one CSV row per trial.
    Run(RunArgs),
    /// Time a dense length-N FFT on the same random signals.
    Baseline(BaselineArgs),
    /// Draw a log-log SVG chart from a trial CSV.
    Plot(PlotArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "by_k")]
    sweep: Sweep,
    /// Sparsity values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    k: Vec<usize>,
    /// Bandwidths, comma separated; `2^20` and `1<<20` are accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "2^20")]
    n: Vec<u64>,
    /// Noise standard deviations, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    sigma: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_enum, default_value = "det")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "on")]
    adaptive: AdaptiveArg,
    #[arg(long, default_value_t = 5.0)]
    c1: f64,
    #[arg(long, default_value_t = 10.0)]
    c2: f64,
    /// The shift is 1/(denom·N).
    #[arg(long, default_value_t = 2.0)]
    epsilon_denom: f64,
    /// Fixed aliasing tolerance instead of p/N.
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    max_passes: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "2^20")]
    n: Vec<u64>,
    #[arg(long, default_value_t = 16)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Trial CSV to read.
    #[arg(long)]
    csv: PathBuf,
    #[arg(long, default_value = "k")]
    x: String,
    #[arg(long, default_value = "samples")]
    y: String,
    #[arg(long, default_value = "variant")]
    group: String,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Run(a) => {
            let plan = ExperimentPlan {
                sweep: a.sweep,
                ks: a.k,
                ns: a.n,
                sigmas: a.sigma,
                trials: a.trials,
                engine: EngineTemplate {
                    variant: a.variant,
                    adaptive: a.adaptive == AdaptiveArg::On,
                    c1: a.c1,
                    c2: a.c2,
                    epsilon_denom: a.epsilon_denom,
                    tau: a.tau,
                    max_passes: a.max_passes,
                },
                out: a.out,
                seed: a.seed,
            };
            plan.validate()?;
            let rows = run_plan(&plan, &mut MonotonicClock::new())?;
            emit(plan.out.as_deref(), &rows)
        }
        Command::Baseline(a) => {
            let rows = baseline_dense(&a.n, a.k, a.trials, a.seed)?;
            emit(a.out.as_deref(), &rows)
        }
        Command::Plot(a) => {
            let text = std::fs::read_to_string(&a.csv).map_err(|source| BenchError::Read {
                path: a.csv.clone(),
                source,
            })?;
            let svg = emit_svg(&Table::parse(&text)?, &a.x, &a.y, &a.group)?;
            std::fs::write(&a.out, svg).map_err(|source| BenchError::Write {
                path: a.out.clone(),
                source,
            })
        }
    }
}

/// Writes the CSV and prints the per-point summary. The summary goes to
/// stderr when the CSV itself is on stdout.
fn emit(out: Option<&Path>, rows: &[TrialRecord]) -> Result<(), BenchError> {
    let summary = format_summary(&summarize(rows));
    match out {
        Some(path) => {
            let write_err = |source| BenchError::Write {
                path: path.to_owned(),
                source,
            };
            let file = File::create(path).map_err(write_err)?;
            let mut w = BufWriter::new(file);
            write_records(&mut w, rows)?;
            w.flush().map_err(write_err)?;
            print!("{summary}");
        }
        None => {
            write_records(io::stdout().lock(), rows)?;
            eprint!("{summary}");
        }
    }
    Ok(())
}
