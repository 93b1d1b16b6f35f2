use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gainrank::cli::{self, EnumerateConfig, Family, VerifyConfig, WORKERS_ENV};
use gainrank::generators::GainKind;
use gainrank::spectral::RankMode;
use gainrank::{Error, Limits};

#[derive(Parser)]
#[command(name = "gainrank", version, about = "Rank and extremal-structure analysis of complex unit gain graphs")]
struct Args {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one graph file.
    Analyze {
        file: PathBuf,
        /// Eigenvalue zero threshold (default: scaled machine epsilon).
        #[arg(long)]
        tol: Option<f64>,
        /// Rank backend: numeric, exact or oracle.
        #[arg(long, default_value = "numeric")]
        mode: RankMode,
    },
    /// Lists every simple cycle with its gain and type.
    Cycles {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max_cycles: usize,
    },
    /// Checks the bounds and characterizations on random instances.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Largest order.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Largest cyclomatic number.
        #[arg(long, default_value_t = 3)]
        extra_edges: usize,
        /// trivial, signed, gaussian, roots:Q or uniform.
        #[arg(long, default_value = "gaussian")]
        gains: GainKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for failing instances.
        #[arg(long, default_value = "gainrank-failures")]
        out_dir: PathBuf,
    },
    /// Certifies the characterizations on every small connected graph.
    Enumerate {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "signed")]
        gains: GainKind,
        /// Gain assignments per graph, up to switching.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// all or cactus.
        #[arg(long, default_value = "all")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "gainrank-failures")]
        out_dir: PathBuf,
    },
}

fn emit(format: Format, report: &impl Serialize) {
    let doc = serde_json::to_value(report).expect("reports serialize");
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("valid json")),
        Format::Text => print!("{}", cli::render_text(&doc)),
    }
}

fn run(args: Args) -> Result<bool, Error> {
    let limits = Limits::default();
    match args.command {
        Command::Analyze { file, tol, mode } => {
            let g = cli::read_graph(&file)?;
            let report = cli::analyze(&g, tol, mode, &limits)?;
            emit(args.format, &report);
            Ok(report.violations.is_empty())
        }
        Command::Cycles { file, max_cycles } => {
            let g = cli::read_graph(&file)?;
            emit(args.format, &cli::list_cycles(&g, max_cycles)?);
            Ok(true)
        }
        Command::Verify { count, n, extra_edges, gains, seed, out_dir } => {
            let cfg = VerifyConfig { count, n_max: n, extra_edges, gains, seed, out_dir: Some(out_dir) };
            let report = cli::run_verify(&cfg, &limits)?;
            emit(args.format, &report);
            Ok(report.all_passed())
        }
        Command::Enumerate { n_max, gains, cap, family, seed, out_dir } => {
            let cfg = EnumerateConfig { n_max, gains, cap, family, seed, out_dir: Some(out_dir) };
            let report = cli::run_enumerate(&cfg)?;
            emit(args.format, &report);
            Ok(report.tally.consistent())
        }
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.parse().map_err(|_| format!("{WORKERS_ENV}={raw:?} is not a worker count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
