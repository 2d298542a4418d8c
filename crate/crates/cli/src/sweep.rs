use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use acs_core::optimize::{ClassifyOptions, SampleOptions};
use acs_core::sweep::{run_sweep, write_csv, write_json, GSelect, SweepConfig};
use acs_core::Rejection;
use clap::{Args, ValueEnum};

use crate::Failure;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args)]
pub struct SweepArgs {
    /// A value of g, or "all".
    #[arg(long, default_value = "all")]
    g: String,
    #[arg(long, default_value_t = 20)]
    max_s: u32,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    format: SweepFormat,
    /// Worker threads (0 = all cores), capped by ACS_MAX_JOBS.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Sampling budget for families with a simple block.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn parse_g(s: &str) -> Result<GSelect, Failure> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(GSelect::All);
    }
    let g: u32 = s.parse().map_err(|_| {
        Failure::new(
            2,
            format!("invalid g = {s:?} (expected an integer or \"all\")"),
        )
    })?;
    if ![1, 2, 3, 4, 6].contains(&g) {
        return Err(Failure::new(2, Rejection::InvalidG(g).to_string()));
    }
    Ok(GSelect::One(g))
}

pub fn run(args: &SweepArgs) -> Result<(), Failure> {
    let g = parse_g(&args.g)?;
    // open the destination first so a bad path fails before any work
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(
            File::create(p)
                .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", p.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let cfg = SweepConfig {
        g,
        max_s: args.max_s,
        jobs: args.jobs,
        classify: ClassifyOptions {
            tol: None,
            sampling: SampleOptions {
                n_samples: args.samples,
                seed: args.seed,
                ..SampleOptions::default()
            },
        },
    };
    let rows = run_sweep(&cfg).map_err(Failure::internal)?;
    let mut w = BufWriter::new(sink);
    match args.format {
        SweepFormat::Csv => write_csv(&rows, &mut w).map_err(Failure::internal)?,
        SweepFormat::Json => write_json(&rows, &mut w).map_err(Failure::internal)?,
    }
    w.flush().map_err(Failure::internal)
}
