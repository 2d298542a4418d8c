use acs_core::sweep::format_sig;
use acs_core::{bound_report, minimal_spectrum, BoundReport, Spectrum};
use clap::Args;
use serde_json::{json, Value};

use crate::{Failure, FamilyArgs, ReportFormat};

#[derive(Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
}

pub fn run(args: &SpectrumArgs) -> Result<(), Failure> {
    let fam = args.family.validate()?;
    let sp = minimal_spectrum(&fam).map_err(Failure::internal)?;
    let rep = bound_report(&sp);
    let out = match args.format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&to_json(&sp, &rep)).map_err(Failure::internal)?
        }
        ReportFormat::Csv => to_csv(&sp, &rep),
        ReportFormat::Table => to_table(&sp, &rep),
    };
    outln!("{out}");
    Ok(())
}

fn to_json(sp: &Spectrum, rep: &BoundReport) -> Value {
    json!({
        "g": sp.spec.g(),
        "m1": sp.spec.m1(),
        "m2": sp.spec.m2(),
        "theta1": sp.theta1,
        "lambdas": sp.lambdas,
        "mults": sp.mults,
        "n": sp.n,
        "s": sp.s,
        "a": sp.a,
        "a_sq": sp.a_sq(),
        "b": sp.b,
        "d": sp.d,
        "ricci_positive": sp.ricci_positive,
        "bounds": rep,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, format_sig)
}

fn opt_bool(v: Option<bool>) -> String {
    v.map_or_else(String::new, |b| b.to_string())
}

/// Rows of `(field, value)`; lists are `;`-separated.
fn fields(sp: &Spectrum, rep: &BoundReport) -> Vec<(&'static str, String)> {
    let join = |v: Vec<String>| v.join(";");
    vec![
        ("g", sp.spec.g().to_string()),
        ("m1", sp.spec.m1().to_string()),
        ("m2", sp.spec.m2().to_string()),
        ("theta1", format_sig(sp.theta1)),
        (
            "lambdas",
            join(sp.lambdas.iter().map(|&l| format_sig(l)).collect()),
        ),
        ("mults", join(sp.mults.iter().map(u32::to_string).collect())),
        ("n", sp.n.to_string()),
        ("s", sp.s.to_string()),
        ("a", format_sig(sp.a)),
        ("a_sq", format_sig(sp.a_sq())),
        ("b", format_sig(sp.b)),
        ("d", sp.d.to_string()),
        ("ricci_positive", sp.ricci_positive.to_string()),
        ("rough_bound", format_sig(rep.rough)),
        ("refined_bound", format_sig(rep.refined)),
        ("optimal_bound", opt(rep.optimal)),
        ("extremal_delta", opt(rep.extremal_delta)),
        ("threshold_ok", opt_bool(rep.threshold_ok)),
        ("b_le_half_a", opt_bool(rep.b_le_half_a)),
        ("index_coeff", format_sig(rep.index_coeff)),
    ]
}

fn to_csv(sp: &Spectrum, rep: &BoundReport) -> String {
    let f = fields(sp, rep);
    let header: Vec<&str> = f.iter().map(|(k, _)| *k).collect();
    let values: Vec<&str> = f.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}", header.join(","), values.join(","))
}

fn to_table(sp: &Spectrum, rep: &BoundReport) -> String {
    let mut lines = vec![format!("family          {}", sp.spec)];
    lines.push(format!("theta1          {}", format_sig(sp.theta1)));
    for (i, (l, m)) in sp.lambdas.iter().zip(&sp.mults).enumerate() {
        lines.push(format!("lambda_{:<8} {:>20}  x{m}", i + 1, format_sig(*l)));
    }
    for (k, v) in fields(sp, rep).into_iter().skip(6) {
        let v = if v.is_empty() { "-".to_string() } else { v };
        lines.push(format!("{k:<15} {v}"));
    }
    lines.join("\n")
}
