//! Closed-form lower bounds on Δ, the moment-relaxation quantities, the
//! extremal configuration, and the index coefficient `2/(d(d−1))`.

mod certificates;

pub use certificates::{integer_certificates, CertificateSet};

use serde::{Deserialize, Serialize};

use crate::delta::{AmbientPair, DeltaBreakdown};
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

/// Width of the band around `a² − 3a − 2 = 0` reported as `b ≤ a/2`.
pub const BOUNDARY_BAND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `(2n−2) − 5a²`.
    pub rough: f64,
    /// `(2n−2) − (17/4)a²`.
    pub refined: f64,
    /// `4s − 4 − 4a²`, for `g = 4`.
    pub optimal: Option<f64>,
    /// `(2n−2) − 4a²`, when the top eigenspace has dimension at least two.
    pub extremal_delta: Option<f64>,
    /// `q > 4 − 4/s`, for `g = 4`.
    pub threshold_ok: Option<bool>,
    /// `b ≤ a/2`, for `g = 4`.
    pub b_le_half_a: Option<bool>,
    pub index_coeff: f64,
}

fn two_n_minus_2(spec: &Spectrum) -> f64 {
    2.0 * spec.n as f64 - 2.0
}

fn require_g(spec: &Spectrum, g: u32) -> Result<()> {
    if spec.g() != g {
        return Err(Error::WrongG {
            expected: g,
            found: spec.g(),
        });
    }
    Ok(())
}

pub fn bound_report(spec: &Spectrum) -> BoundReport {
    let base = two_n_minus_2(spec);
    let a2 = spec.a_sq();
    let is_g4 = spec.g() == 4;
    let extremal_delta = if spec.mults[spec.top_block()] >= 2 {
        Some(base - 4.0 * a2)
    } else {
        None
    };
    BoundReport {
        rough: base - 5.0 * a2,
        refined: base - 4.25 * a2,
        optimal: is_g4.then_some(4.0 * spec.s as f64 - 4.0 - 4.0 * a2),
        extremal_delta,
        threshold_ok: pointwise_threshold(spec).ok(),
        b_le_half_a: b_le_half_a(spec).ok(),
        index_coeff: index_coefficient(spec),
    }
}

/// `(2n−2) − 15`, the estimate for `g = 3` where `λ ∈ {√3, 0, −√3}`.
pub fn g3_estimate(spec: &Spectrum) -> Result<f64> {
    require_g(spec, 3)?;
    Ok(two_n_minus_2(spec) - 15.0)
}

/// `G(A, B) = 2(a−b)A + 2(a−b)B + 4ab − B² + AB` on `[−b, a]²`.
///
/// `a` and `b` come from the oriented chord interval; `A` and `B` are given in
/// the spectrum's own orientation and flipped along with it.
pub fn moment_g(spec: &Spectrum, big_a: f64, big_b: f64) -> Result<f64> {
    require_g(spec, 4)?;
    let (a, b) = spec.chord_interval();
    let sign = spec.orientation();
    let (ua, ub) = (sign * big_a, sign * big_b);
    let slack = 1e-12 * a.max(1.0);
    for (name, v) in [("A", ua), ("B", ub)] {
        if v < -b - slack || v > a + slack {
            return Err(Error::OutOfRange {
                name,
                value: v,
                lo: -b,
                hi: a,
            });
        }
    }
    Ok(g_unchecked(a, b, ua, ub))
}

pub(crate) fn g_unchecked(a: f64, b: f64, ua: f64, ub: f64) -> f64 {
    2.0 * (a - b) * ua + 2.0 * (a - b) * ub + 4.0 * a * b - ub * ub + ua * ub
}

/// `F = 2S_x + 2S_ν − B² + AB`, so that `Δ = (2n−2) − F + 2C²`.
pub fn f_value(bd: &DeltaBreakdown) -> f64 {
    2.0 * bd.sx + 2.0 * bd.snu - bd.b * bd.b + bd.a * bd.b
}

/// `a² − 3a − 2 ≥ 0`, the form of `b ≤ a/2` when `b = (a+1)/(a−1)`.
pub fn b_le_half_a_at(a: f64) -> bool {
    a * a - 3.0 * a - 2.0 >= -BOUNDARY_BAND * a.max(1.0)
}

pub fn b_le_half_a(spec: &Spectrum) -> Result<bool> {
    require_g(spec, 4)?;
    let (a, _) = spec.chord_interval();
    if a <= 1.0 {
        return Err(Error::OutOfRange {
            name: "a",
            value: a,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    Ok(b_le_half_a_at(a))
}

/// `q > 4 − 4/s`, decided in integers as `q s > 4s − 4`.
pub fn pointwise_threshold(spec: &Spectrum) -> Result<bool> {
    require_g(spec, 4)?;
    let q = spec.spec.q() as i64;
    let s = spec.s as i64;
    Ok(q * s > 4 * s - 4)
}

/// Two orthonormal vectors inside the eigenspace of the largest `|λ|`.
pub fn extremal_pair(spec: &Spectrum) -> Result<AmbientPair> {
    let top = spec.top_block();
    if spec.mults[top] < 2 {
        return Err(Error::NoExtremalPair);
    }
    let start = spec.block_ranges()[top].start;
    let mut x = vec![0.0; spec.dim()];
    let mut nu = vec![0.0; spec.dim()];
    x[start] = 1.0;
    nu[start + 1] = 1.0;
    AmbientPair::new(x, nu)
}

/// `2/(d(d−1))` with `d = n + 3`.
pub fn index_coefficient(spec: &Spectrum) -> f64 {
    index_coefficient_for_d(spec.d)
}

pub fn index_coefficient_for_d(d: u32) -> f64 {
    let d = d as f64;
    2.0 / (d * (d - 1.0))
}
