use acs_core::verify::{criterion, VerifyConfig, CRITERIA};
use clap::Args;

use crate::Failure;

#[derive(Args)]
pub struct VerifyArgs {
    /// Largest s in the q = 4 rows.
    #[arg(long, default_value_t = 40)]
    max_s: u32,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Run only these criteria (comma separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    /// Perturb every spectrum by this amount (negative control).
    #[arg(long, hide = true)]
    tamper: Option<f64>,
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    let cfg = VerifyConfig {
        max_s: args.max_s,
        tol: args.tol,
        seed: args.seed,
        tamper: args.tamper,
    };
    let ids: Vec<u8> = if args.only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        args.only.clone()
    };
    let mut failed = Vec::new();
    for id in ids {
        let o = criterion(id, &cfg);
        outln!("{o}");
        if !o.passed {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(
            1,
            format!("failing criteria: {}", failed.join(", ")),
        ))
    }
}
