//! `tda`: barcodes, conversions, distances, directional projections and plots.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 unsupported
//! conversion or flavor mismatch.

mod commands;
mod format;
mod plot;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use commands::{BarcodeOptions, DistanceKind};
use format::{emit_json, parse_json, BarcodeFile, ComplexFile, FileFlavor};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Unsupported(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ordinary,
    Extended,
    Lzz,
    Zigzag,
}

#[derive(Parser)]
#[command(name = "tda", version, about = "Levelset and extended persistence over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a barcode from a complex file.
    Barcode {
        /// Complex file; standard input when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Keep only this homological degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Break ties between equal vertex values by vertex id.
        #[arg(long)]
        perturb: bool,
        /// Levelset zigzag through extended persistence (any dimension).
        #[arg(long)]
        via_pyramid: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a barcode file to another flavor.
    Convert {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        to: FileFlavor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distance between two barcode files of the same flavor.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        kind: DistanceKind,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Extended barcodes of height functions along directions.
    Project {
        input: Option<PathBuf>,
        /// A count, or explicit vectors such as `1,0;0,1`.
        #[arg(long, allow_hyphen_values = true)]
        directions: String,
        #[arg(long)]
        perturb: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a barcode file as SVG.
    Plot {
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Precondition(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Barcode { input, mode, degree, perturb, via_pyramid, out } => {
            let file: ComplexFile = parse_json(&read_input(&input)?, "complex file")?;
            let bc = commands::barcode(&file, &BarcodeOptions { mode, degree, perturb, via_pyramid })?;
            write_output(&out, &emit_json(&bc))
        }
        Command::Convert { input, to, out } => {
            let file: BarcodeFile = parse_json(&read_input(&input)?, "barcode file")?;
            write_output(&out, &emit_json(&commands::convert(&file, to)?))
        }
        Command::Distance { a, b, kind, degree } => {
            let fa: BarcodeFile = parse_json(&read_input(&Some(a))?, "first barcode file")?;
            let fb: BarcodeFile = parse_json(&read_input(&Some(b))?, "second barcode file")?;
            println!("{}", commands::format_distance(commands::distance(&fa, &fb, kind, degree)?));
            Ok(())
        }
        Command::Project { input, directions, perturb, out } => {
            let file: ComplexFile = parse_json(&read_input(&input)?, "complex file")?;
            let set = commands::project(&file, &directions, perturb)?;
            write_output(&out, &commands::render_projection(&set))
        }
        Command::Plot { input, out } => {
            let file: BarcodeFile = parse_json(&read_input(&input)?, "barcode file")?;
            file.validate()?;
            write_output(&out, &plot::render(&file))
        }
    }
}

fn configure_threads() {
    let threads = std::env::var("TDA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    if let Some(n) = threads {
        // only fails when a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tda: {e}");
            ExitCode::from(e.code())
        }
    }
}
