use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcorr_cli::figure::write_figure;
use qcorr_cli::output::{write_csv, write_json};
use qcorr_cli::validate::Validator;
use qcorr_cli::CliError;
use qcorr_core::sweep::sweep;
use qcorr_core::{AmidConfig, Measure, NoiseKind, StateKind, SweepConfig};

#[derive(Parser)]
#[command(name = "qcorr", version, about = "MID and AMID of noisy three-qubit GHZ and W states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate MID and/or AMID over a uniform κt grid.
    Sweep(SweepArgs),
    /// Write the CSV series of figure 1 or 2.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance suite.
    Validate {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    Ghz,
    W,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    X,
    Y,
    Z,
    Iso,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Mid,
    Amid,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    state: StateArg,
    #[arg(long, value_enum)]
    noise: NoiseArg,
    #[arg(long, value_enum, default_value = "both")]
    measure: MeasureArg,
    #[arg(long, default_value_t = 0.0)]
    kt_min: f64,
    #[arg(long, default_value_t = 3.0)]
    kt_max: f64,
    #[arg(long, default_value_t = 61)]
    points: usize,
    #[arg(long, default_value_t = 24)]
    restarts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        let state = match self.state {
            StateArg::Ghz => StateKind::Ghz,
            StateArg::W => StateKind::W,
        };
        let noise = match self.noise {
            NoiseArg::X => NoiseKind::PauliX,
            NoiseArg::Y => NoiseKind::PauliY,
            NoiseArg::Z => NoiseKind::PauliZ,
            NoiseArg::Iso => NoiseKind::Isotropic,
        };
        let measure = match self.measure {
            MeasureArg::Mid => Measure::Mid,
            MeasureArg::Amid => Measure::Amid,
            MeasureArg::Both => Measure::Both,
        };
        SweepConfig {
            state,
            noise,
            measure,
            kt_min: self.kt_min,
            kt_max: self.kt_max,
            points: self.points,
            amid: AmidConfig {
                restarts: self.restarts,
                seed: self.seed,
                ..AmidConfig::default()
            },
        }
    }
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let config = args.config();
    config.validate()?;
    let rows = sweep(&config)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Csv => write_csv(&rows, sink).map_err(|e| CliError::Output(e.to_string())),
        Format::Json => write_json(&config, &rows, sink).map_err(|e| CliError::Output(e.to_string())),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QCORR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("QCORR_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Sweep(args) => run_sweep(&args)?,
        Command::Figure { id, out } => {
            for p in write_figure(id, &out, &AmidConfig::default())? {
                eprintln!("wrote {}", p.display());
            }
        }
        Command::Validate { json } => {
            let report = Validator::default().run();
            if json {
                let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Output(e.to_string()))?;
                println!("{text}");
            } else {
                println!("{report}");
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
