/// `println!` that ignores a closed pipe instead of panicking.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod min_delta;
mod spectrum;
mod sweep;
mod verify;

use std::process::ExitCode;

use acs_core::{validate_family, FamilySpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "acs",
    version,
    about = "Pointwise ACS integrand on minimal isoparametric hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Principal curvatures of the minimal leaf and the closed-form bounds.
    Spectrum(spectrum::SpectrumArgs),
    /// Global minimum of Δ by the exact solver, by sampling, or both.
    MinDelta(min_delta::MinDeltaArgs),
    /// Run the acceptance matrix and print one line per criterion.
    VerifyPaper(verify::VerifyArgs),
    /// Classify every family up to a given m1 + m2.
    Sweep(sweep::SweepArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FamilyArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub m1: u32,
    #[arg(long)]
    pub m2: u32,
}

impl FamilyArgs {
    pub fn validate(&self) -> Result<FamilySpec, Failure> {
        validate_family(self.g, self.m1, self.m2).map_err(|r| Failure::new(2, r.to_string()))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

/// A non-zero exit with a message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Spectrum(a) => spectrum::run(&a),
        Command::MinDelta(a) => min_delta::run(&a),
        Command::VerifyPaper(a) => verify::run(&a),
        Command::Sweep(a) => sweep::run(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("acs: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
