use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ks_channel::harness::{self, parse_vector, Command, Format, Report, RunConfig};
use ks_channel::Error;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ks-channel", version, about = "Kochen-Specker qubit channel simulation and cost accounting")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Trials (per cell for verify and simulate); defaults depend on the command.
    #[arg(long, global = true)]
    trials: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of z-slices used by the rejection sampler (even, at least 2).
    #[arg(long, global = true, default_value_t = ks_channel::protocol::DEFAULT_BINS)]
    bins: usize,

    /// Fixed state Bloch vector as x,y,z (normalized on input).
    #[arg(long, global = true, allow_hyphen_values = true)]
    state: Option<String>,

    /// Fixed measurement direction as x,y,z (normalized on input).
    #[arg(long, global = true, allow_hyphen_values = true)]
    meas: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Worker threads (0 = one per core). Never changes the results.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Check the model against the Born rule on a grid of angles.
    Verify,
    /// Run the full Alice-to-Bob protocol.
    Simulate,
    /// Exact and Monte Carlo mutual information.
    Mi,
    /// Index and code-length statistics.
    Cost,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Json,
    Csv,
}

fn build_config(cli: &Cli) -> ks_channel::Result<RunConfig> {
    let command = match cli.command {
        Sub::Verify => Command::Verify,
        Sub::Simulate => Command::Simulate,
        Sub::Mi => Command::Mi,
        Sub::Cost => Command::Cost,
    };
    let mut config = RunConfig::new(command);
    if let Some(t) = cli.trials {
        config.trials = t;
    }
    config.seed = cli.seed;
    config.bins = cli.bins;
    config.state = cli.state.as_deref().map(parse_vector).transpose()?;
    config.meas = cli.meas.as_deref().map(parse_vector).transpose()?;
    config.output_path = cli.out.clone();
    config.format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    config.workers = cli.workers;
    config.validate()?;
    Ok(config)
}

fn emit(report: &Report) -> io::Result<()> {
    let sink: Box<dyn Write> = match &report.config.output_path {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match report.config.format {
        Format::Json => {
            let json = report.to_json().map_err(io::Error::other)?;
            writeln!(sink, "{json}")?;
        }
        Format::Csv => report.write_csv(&mut sink).map_err(io::Error::other)?,
    }
    sink.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let report = match harness::run(&config) {
        Ok(r) => r,
        Err(e @ Error::InvalidArgument(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    if let Err(e) = emit(&report) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_RUNTIME);
    }
    for check in report.results.checks() {
        eprintln!("[{}] {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
