use acs_core::optimize::{
    classify_acs_with, exact_min_delta, sample_min_delta_with, ClassifyOptions, SampleOptions,
    EXACT_TOL, SAMPLED_TOL,
};
use acs_core::sweep::format_sig;
use acs_core::{minimal_spectrum, Error, MinResult, Spectrum};
use clap::{Args, ValueEnum};

use crate::{Failure, FamilyArgs};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Exact,
    Sample,
    Both,
}

#[derive(Args)]
pub struct MinDeltaArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sign tolerance; defaults to 1e-9 (exact) or 1e-4 (sampled).
    #[arg(long)]
    tol: Option<f64>,
    /// Exact-method tolerance 1e-12.
    #[arg(long)]
    strict: bool,
}

const STRICT_TOL: f64 = 1e-12;

pub fn run(args: &MinDeltaArgs) -> Result<(), Failure> {
    let fam = args.family.validate()?;
    let sp = minimal_spectrum(&fam).map_err(Failure::internal)?;
    let sampling = SampleOptions {
        n_samples: args.samples,
        seed: args.seed,
        ..SampleOptions::default()
    };
    let exact_tol = if args.strict {
        STRICT_TOL
    } else {
        args.tol.unwrap_or(EXACT_TOL)
    };

    outln!("family     {fam}");
    let exact = match args.method {
        MethodArg::Sample => None,
        _ => match exact_min_delta(&sp) {
            Ok(r) => Some(r),
            Err(e @ Error::SimpleBlock { .. }) if args.method == MethodArg::Exact => {
                return Err(Failure::new(4, format!("exact method not applicable: {e}")));
            }
            Err(Error::SimpleBlock { .. }) => None,
            Err(e) => return Err(Failure::internal(e)),
        },
    };
    if let Some(r) = &exact {
        print_exact(&sp, r);
    }
    let sampled = match args.method {
        MethodArg::Exact => None,
        _ => Some(sample_min_delta_with(&sp, &sampling).map_err(inapplicable)?),
    };
    if let Some(r) = &sampled {
        outln!(
            "sampled    {}  ({} samples, seed {})",
            format_sig(r.min_delta),
            args.samples,
            args.seed
        );
    }

    let verdict = classify_acs_with(
        &fam,
        &ClassifyOptions {
            tol: if args.strict && exact.is_some() {
                Some(STRICT_TOL)
            } else {
                args.tol
            },
            sampling,
        },
    )
    .map_err(inapplicable)?;
    outln!("status     {}", verdict.status);
    outln!("case       {}", verdict.paper_case);

    if let (Some(e), Some(s)) = (&exact, &sampled) {
        let gap = s.min_delta - e.min_delta;
        let upper = args.tol.unwrap_or(SAMPLED_TOL);
        outln!("gap        {gap:.3e}  (sampled - exact)");
        if gap < -exact_tol || gap > upper {
            return Err(Failure::new(
                3,
                format!("methods disagree: sampled - exact = {gap:.3e} outside [-{exact_tol:e}, {upper:e}]"),
            ));
        }
    }
    Ok(())
}

fn inapplicable(e: Error) -> Failure {
    match e {
        Error::NoPairs { .. } => Failure::new(4, e.to_string()),
        e => Failure::internal(e),
    }
}

fn print_exact(sp: &Spectrum, r: &MinResult) {
    outln!("exact      {}", format_sig(r.min_delta));
    if let Some(c) = r.certificate {
        outln!(
            "vertex     {} (lambda = {})",
            c.vertex + 1,
            format_sig(sp.lambdas[c.vertex])
        );
        outln!("chord B*   {}", format_sig(c.chord_b));
    }
    let list = |v: &[f64]| {
        v.iter()
            .map(|x| format_sig(*x))
            .collect::<Vec<_>>()
            .join(" ")
    };
    outln!("witness p  {}", list(&r.witness.p));
    outln!("witness q  {}", list(&r.witness.q));
    let top = sp.top_block();
    let extremal = r.witness.p[top] == 1.0 && (r.witness.q[top] - 1.0).abs() <= 1e-12;
    if extremal {
        outln!("witness is the extremal configuration (X, nu in the top eigenspace)");
    }
}
