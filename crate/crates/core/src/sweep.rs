//! Multiplicity sweeps: one classified row per family, computed on a bounded
//! worker pool and emitted in a fixed order.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::index_coefficient;
use crate::error::Result;
use crate::optimize::{classify_acs_with, ClassifyOptions, PaperCase, Status};
use crate::spectra::{minimal_spectrum, validate_family, FamilySpec};

/// Environment variable that caps the sweep worker count.
pub const MAX_JOBS_ENV: &str = "ACS_MAX_JOBS";

pub const CSV_HEADER: [&str; 11] = [
    "g",
    "m1",
    "m2",
    "n",
    "s",
    "a_sq",
    "ricci_positive",
    "min_delta",
    "status",
    "paper_case",
    "index_coeff",
];

const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub g: u32,
    pub m1: u32,
    pub m2: u32,
    pub n: u32,
    pub s: u32,
    pub a_sq: f64,
    pub ricci_positive: bool,
    pub min_delta: f64,
    pub status: Status,
    pub paper_case: PaperCase,
    pub index_coeff: f64,
}

impl SweepRow {
    /// The row as it reads back after printing.
    pub fn rounded(&self) -> SweepRow {
        let r = |x: f64| format_sig(x).parse().expect("formatted float parses");
        SweepRow {
            a_sq: r(self.a_sq),
            min_delta: r(self.min_delta),
            index_coeff: r(self.index_coeff),
            ..self.clone()
        }
    }

    fn record(&self) -> [String; 11] {
        [
            self.g.to_string(),
            self.m1.to_string(),
            self.m2.to_string(),
            self.n.to_string(),
            self.s.to_string(),
            format_sig(self.a_sq),
            self.ricci_positive.to_string(),
            format_sig(self.min_delta),
            self.status.to_string(),
            self.paper_case.to_string(),
            format_sig(self.index_coeff),
        ]
    }
}

/// Fixed notation with 12 significant digits.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", SIG_DIGITS - 1, 0.0);
    }
    // exponent after rounding, so 9.99…95 becomes 10.0000000000
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GSelect {
    One(u32),
    All,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub g: GSelect,
    pub max_s: u32,
    pub jobs: usize,
    pub classify: ClassifyOptions,
}

/// Valid families with `s ≤ max_s`, `m1 ≤ m2`, ordered by `(g, s, m1)`.
///
/// Swapping `m1` and `m2` reflects the spectrum and leaves Δ unchanged, so
/// only one of each pair is listed. `(1, 1, 1)` is skipped: its leaf is a
/// circle, which carries no orthonormal pair.
pub fn families(g: GSelect, max_s: u32) -> Vec<FamilySpec> {
    let gs: Vec<u32> = match g {
        GSelect::One(g) => vec![g],
        GSelect::All => vec![1, 2, 3, 4, 6],
    };
    let mut out = Vec::new();
    for g in gs {
        for s in 2..=max_s {
            for m1 in 1..=s / 2 {
                if let Ok(f) = validate_family(g, m1, s - m1) {
                    if g == 1 && m1 == 1 {
                        continue;
                    }
                    out.push(f);
                }
            }
        }
    }
    out
}

/// `requested` (0 meaning all cores), capped by [`MAX_JOBS_ENV`] when set.
pub fn effective_jobs(requested: usize) -> usize {
    let base = if requested == 0 {
        rayon::current_num_threads()
    } else {
        requested
    };
    let cap = std::env::var(MAX_JOBS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0);
    cap.map_or(base, |c| base.min(c)).max(1)
}

pub fn sweep_row(family: &FamilySpec, opts: &ClassifyOptions) -> Result<SweepRow> {
    let spec = minimal_spectrum(family)?;
    let v = classify_acs_with(family, opts)?;
    Ok(SweepRow {
        g: family.g(),
        m1: family.m1(),
        m2: family.m2(),
        n: spec.n,
        s: spec.s,
        a_sq: spec.a_sq(),
        ricci_positive: spec.ricci_positive,
        min_delta: v.margin,
        status: v.status,
        paper_case: v.paper_case,
        index_coeff: index_coefficient(&spec),
    })
}

/// Every family gets the same seed, so rows do not depend on the worker count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let fams = families(cfg.g, cfg.max_s);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_jobs(cfg.jobs))
        .build()
        .expect("thread pool");
    pool.install(|| {
        fams.par_iter()
            .map(|f| sweep_row(f, &cfg.classify))
            .collect::<Result<Vec<_>>>()
    })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<SweepRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// JSON array of rows, floats rounded as in the CSV.
pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    let rounded: Vec<SweepRow> = rows.iter().map(SweepRow::rounded).collect();
    serde_json::to_writer_pretty(&mut out, &rounded)?;
    writeln!(out)
}
