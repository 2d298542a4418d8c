use crate::delta::{lift, ReducedPoint};
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

use super::{ExactCertificate, Method, MinResult};

const TIE_TOL: f64 = 1e-12;

/// Minimum over the `q`-simplex of Δ at `p = e_j`, `r = 0`, together with the
/// minimising chord coordinate `B*`.
///
/// With `p = e_j` only `B = Σ q_i λ_i` and `S_ν = Σ q_i λ_i²` remain. For fixed
/// `B`, `S_ν` is the mean of the convex function `λ²` under a probability
/// measure on `[lo, hi]` with mean `B`, so `S_ν ≤ (hi + lo)B − hi·lo`, the
/// chord through `(lo, lo²)` and `(hi, hi²)`. The two-point measure on
/// `{lo, hi}` with mean `B` attains the chord, so the envelope is tight and the
/// problem collapses to the convex quadratic
/// `(2n−2) − 2λ_j² − 2[(hi+lo)B − hi·lo] + B² − λ_j B` over `B ∈ [lo, hi]`.
pub fn vertex_minimum(base: f64, lambda_j: f64, hi: f64, lo: f64) -> (f64, f64) {
    let axis = (2.0 * (hi + lo) + lambda_j) / 2.0;
    let b = axis.clamp(lo, hi);
    let value =
        base - 2.0 * lambda_j * lambda_j - 2.0 * ((hi + lo) * b - hi * lo) + b * b - lambda_j * b;
    (value, b)
}

/// Exact global minimum of Δ when every block has multiplicity at least two.
///
/// The `r`-dependence of Δ is `+2C²`, minimised by the feasible choice `r = 0`.
/// At fixed `q` the remaining objective is affine in `p`, so some vertex
/// `p = e_j` is optimal, and [`vertex_minimum`] solves each vertex exactly.
pub fn exact_min_delta(spec: &Spectrum) -> Result<MinResult> {
    if let Some(block) = spec.mults.iter().position(|&m| m < 2) {
        return Err(Error::SimpleBlock { block });
    }
    let g = spec.lambdas.len();
    let hi = spec.lambdas[0];
    let lo = spec.lambdas[g - 1];
    let base = 2.0 * spec.n as f64 - 2.0;

    let mut best: Option<(f64, usize, f64)> = None;
    for (j, &lj) in spec.lambdas.iter().enumerate() {
        let (value, b) = vertex_minimum(base, lj, hi, lo);
        if best.is_none_or(|(v, _, _)| value < v - TIE_TOL) {
            best = Some((value, j, b));
        }
    }
    let (min_delta, vertex, chord_b) = best.expect("at least one block");

    let mut p = vec![0.0; g];
    p[vertex] = 1.0;
    let mut q = vec![0.0; g];
    if hi > lo {
        let t = ((chord_b - lo) / (hi - lo)).clamp(0.0, 1.0);
        q[0] += t;
        q[g - 1] += 1.0 - t;
    } else {
        q[0] = 1.0;
    }
    let witness = ReducedPoint {
        p,
        q,
        r: vec![0.0; g],
    };
    let witness_pair = lift(spec, &witness)?;

    Ok(MinResult {
        min_delta,
        witness,
        witness_pair: Some(witness_pair),
        method: Method::ExactReduced,
        certificate: Some(ExactCertificate { vertex, chord_b }),
    })
}
