use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::Outcome;

/// Exit code for a failed check.
const EXIT_CHECK: u8 = 1;
/// Exit code for usage and domain errors.
const EXIT_USAGE: u8 = 2;
/// Exit code when a root or other sought quantity does not exist in range.
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "orbivol", version, about = "Curvature checks and volume lower bounds for hyperbolic orbifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the algebraic, metric and curvature identity suites for one algebra.
    Verify(VerifyArgs),
    /// Evaluate volume lower bounds, optionally against the published table.
    Bounds(BoundsArgs),
    /// Scan sectional curvatures and compare with the proven upper bound.
    CurvatureScan(ScanArgs),
    /// Least positive zero of the auxiliary function F.
    WangRoot(WangArgs),
    /// Upper bound on the order of a finite isometry group of a quaternionic manifold.
    Hurwitz(HurwitzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(alias = "quaternion")]
    H,
    #[value(alias = "complex")]
    C,
    #[value(alias = "real")]
    R,
}

impl From<FieldArg> for orbivol::GroundField {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::H => orbivol::GroundField::Quaternion,
            FieldArg::C => orbivol::GroundField::Complex,
            FieldArg::R => orbivol::GroundField::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Original,
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Printed,
    FirstPrinciples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub field: FieldArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// All fields when omitted.
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
    /// Both variants when omitted.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range `a..b` (or `a..=b`); defaults to `1..4`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value = "printed")]
    pub mode: ModeArg,
    /// Compare the selected published cells and fail on relative deviation above 1e-3.
    #[arg(long)]
    pub check_table: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub field: FieldArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 200)]
    pub ascent_iters: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WangArgs {
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    pub c2: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub volume: f64,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start {a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end {b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ORBIVOL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| format!("ORBIVOL_THREADS must be a non-negative integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn emit(out: &OutputArgs, text: &str) -> io::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn exit_for(err: &orbivol::Error) -> u8 {
    match err {
        orbivol::Error::RootNotFound { .. } => EXIT_NOT_FOUND,
        orbivol::Error::Closure { .. } => EXIT_CHECK,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(u8::try_from(code).unwrap_or(EXIT_USAGE));
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let (result, out) = match &cli.command {
        Command::Verify(a) => (commands::verify(a), &a.out),
        Command::Bounds(a) => (commands::bounds(a), &a.out),
        Command::CurvatureScan(a) => (commands::curvature_scan(a), &a.out),
        Command::WangRoot(a) => (commands::wang_root(a), &a.out),
        Command::Hurwitz(a) => (commands::hurwitz(a), &a.out),
    };
    match result {
        Ok(Outcome { text, passed }) => {
            if let Err(e) = emit(out, &text) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
