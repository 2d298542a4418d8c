//! Principal-curvature spectra of minimal isoparametric hypersurfaces.
//!
//! A family `N^{n+1} ⊂ S^{n+2}` is named by the number `g` of distinct
//! principal curvatures and the two multiplicities `(m1, m2)`, which repeat
//! cyclically over the `g` eigenvalue blocks. The minimal leaf has
//! `λ_i = cot(θ_1 + (i−1)π/g)` with `θ_1` fixed by `Σ μ_i λ_i = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

/// Half-width of the excluded neighbourhood of the cotangent poles.
const POLE_GUARD: f64 = 1e-12;
const BISECTION_TOL: f64 = 1e-14;
const BISECTION_MAX_ITER: usize = 200;

/// Why a `(g, m1, m2)` triple was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("invalid g = {0} (must be one of 1, 2, 3, 4, 6)")]
    InvalidG(u32),
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("odd g = {g} requires equal multiplicities, got ({m1}, {m2})")]
    UnequalOddMultiplicities { g: u32, m1: u32, m2: u32 },
    #[error("g = 3 requires m in {{1, 2, 4, 8}}, got {0}")]
    G3Multiplicity(u32),
    #[error("g = 6 requires m in {{1, 2}}, got {0}")]
    G6Multiplicity(u32),
}

impl Rejection {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::InvalidG(_) => "invalid-g",
            Rejection::ZeroMultiplicity => "zero-multiplicity",
            Rejection::UnequalOddMultiplicities { .. } => "odd-g-unequal-multiplicities",
            Rejection::G3Multiplicity(_) => "g3-multiplicity",
            Rejection::G6Multiplicity(_) => "g6-multiplicity",
        }
    }
}

pub type ValidationResult = std::result::Result<FamilySpec, Rejection>;

/// A validated isoparametric family `(g, m1, m2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    g: u32,
    m1: u32,
    m2: u32,
}

impl FamilySpec {
    pub fn new(g: u32, m1: u32, m2: u32) -> ValidationResult {
        validate_family(g, m1, m2)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    /// `s = m1 + m2`.
    pub fn s(&self) -> u32 {
        self.m1 + self.m2
    }

    /// `q = min{m1, m2}`.
    pub fn q(&self) -> u32 {
        self.m1.min(self.m2)
    }

    /// `p = max{m1, m2}`.
    pub fn p(&self) -> u32 {
        self.m1.max(self.m2)
    }

    /// Block multiplicities `μ_1, …, μ_g` in the cyclic pattern `m1, m2, m1, …`.
    pub fn multiplicities(&self) -> Vec<u32> {
        (0..self.g)
            .map(|i| if i % 2 == 0 { self.m1 } else { self.m2 })
            .collect()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, m1={}, m2={})", self.g, self.m1, self.m2)
    }
}

/// Structural admissibility of `(g, m1, m2)`.
///
/// Only the constraints that follow from the classification of `g` and of
/// the odd-`g` multiplicities are enforced; any positive `g = 2` or `g = 4`
/// pair is accepted as a formal family.
pub fn validate_family(g: u32, m1: u32, m2: u32) -> ValidationResult {
    if !matches!(g, 1 | 2 | 3 | 4 | 6) {
        return Err(Rejection::InvalidG(g));
    }
    if m1 == 0 || m2 == 0 {
        return Err(Rejection::ZeroMultiplicity);
    }
    if g % 2 == 1 && m1 != m2 {
        return Err(Rejection::UnequalOddMultiplicities { g, m1, m2 });
    }
    if g == 3 && !matches!(m1, 1 | 2 | 4 | 8) {
        return Err(Rejection::G3Multiplicity(m1));
    }
    if g == 6 && m1 != m2 {
        return Err(Rejection::UnequalOddMultiplicities { g, m1, m2 });
    }
    if g == 6 && !matches!(m1, 1 | 2) {
        return Err(Rejection::G6Multiplicity(m1));
    }
    Ok(FamilySpec { g, m1, m2 })
}

/// Spectrum of the minimal leaf.
///
/// Eigenvalues are stored strictly decreasing; coordinates of the principal
/// frame are laid out block by block in that order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub spec: FamilySpec,
    pub theta1: f64,
    pub lambdas: Vec<f64>,
    pub mults: Vec<u32>,
    /// Dimension of the inner hypersurface `M`; `dim N = n + 1`.
    pub n: u32,
    pub s: u32,
    /// `max_i |λ_i|`.
    pub a: f64,
    /// `−min_i λ_i` (zero for `g = 1`).
    pub b: f64,
    /// Ambient Euclidean dimension `n + 3`.
    pub d: u32,
    pub ricci_positive: bool,
}

impl Spectrum {
    pub fn g(&self) -> u32 {
        self.spec.g()
    }

    /// `dim N = n + 1`, the length of an ambient coordinate vector.
    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }

    pub fn a_sq(&self) -> f64 {
        self.a * self.a
    }

    /// Coordinate ranges of the eigenvalue blocks.
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.mults
            .iter()
            .map(|&mu| {
                let r = start..start + mu as usize;
                start = r.end;
                r
            })
            .collect()
    }

    /// The repeated eigenvalue list, one entry per principal direction.
    pub fn coordinate_lambdas(&self) -> Vec<f64> {
        self.lambdas
            .iter()
            .zip(&self.mults)
            .flat_map(|(&l, &mu)| std::iter::repeat_n(l, mu as usize))
            .collect()
    }

    /// Index of the block attaining `max |λ_i|` (smallest index on ties).
    pub fn top_block(&self) -> usize {
        let mut best = 0;
        for (i, l) in self.lambdas.iter().enumerate() {
            if l.abs() > self.lambdas[best].abs() + 1e-12 {
                best = i;
            }
        }
        best
    }

    /// `+1` if the largest `|λ|` is a positive eigenvalue, `−1` otherwise.
    ///
    /// Δ is invariant under `λ ↦ −λ`; the chord bounds are stated for the
    /// orientation in which the top curvature is `+a`.
    pub fn orientation(&self) -> f64 {
        if self.lambdas[self.top_block()] >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Oriented chord interval `(a, b')`: all curvatures of the oriented
    /// spectrum lie in `[−b', a]`, with `a = max |λ|`.
    ///
    /// For `g = 4` with `m1 ≤ m2` this is `(a, b)`.
    pub fn chord_interval(&self) -> (f64, f64) {
        let hi = self.lambdas[0];
        let lo = self.lambdas[self.lambdas.len() - 1];
        if self.orientation() > 0.0 {
            (hi, -lo)
        } else {
            (-lo, hi)
        }
    }

    /// `|Σ μ_i λ_i| / Σ μ_i |λ_i|` (zero when every curvature vanishes).
    pub fn minimality_residual(&self) -> f64 {
        let (sum, abs) = self
            .lambdas
            .iter()
            .zip(&self.mults)
            .fold((0.0, 0.0), |(s, t), (&l, &mu)| {
                (s + mu as f64 * l, t + mu as f64 * l.abs())
            });
        if abs == 0.0 {
            0.0
        } else {
            sum.abs() / abs
        }
    }
}

/// `h(θ) = Σ μ_i cot(θ + (i−1)π/g)`: the mean curvature of the leaf at `θ_1 = θ`,
/// up to a positive factor.
pub fn mean_curvature_fn(g: u32, mults: &[u32], theta: f64) -> f64 {
    mults
        .iter()
        .enumerate()
        .map(|(i, &mu)| mu as f64 / (theta + i as f64 * PI / g as f64).tan())
        .sum()
}

/// Root of `h` on `(0, π/g)` by bisection.
pub fn theta1_by_bisection(spec: &FamilySpec) -> Result<f64> {
    let g = spec.g();
    let mults = spec.multiplicities();
    let mut lo = POLE_GUARD;
    let mut hi = PI / g as f64 - POLE_GUARD;
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let h = mean_curvature_fn(g, &mults, mid);
        if h == 0.0 {
            return Ok(mid);
        }
        // h decreases from +inf to -inf across the interval
        if h > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BISECTION_TOL {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::NoConvergence {
        iterations: BISECTION_MAX_ITER,
    })
}

/// Closed form for `g = 4`: `cos 2θ_1 = √(m2/s)`, `sin 2θ_1 = √(m1/s)`.
pub fn theta1_g4_closed_form(m1: u32, m2: u32) -> f64 {
    0.5 * (m1 as f64).sqrt().atan2((m2 as f64).sqrt())
}

pub fn minimal_spectrum(spec: &FamilySpec) -> Result<Spectrum> {
    let g = spec.g();
    let mults = spec.multiplicities();
    let (theta1, lambdas) = match g {
        1 => (PI / 2.0, vec![0.0]),
        _ => {
            let theta1 = if g == 4 {
                theta1_g4_closed_form(spec.m1(), spec.m2())
            } else {
                theta1_by_bisection(spec)?
            };
            let lambdas = (0..g)
                .map(|i| 1.0 / (theta1 + i as f64 * PI / g as f64).tan())
                .collect();
            (theta1, lambdas)
        }
    };

    let dim: u32 = mults.iter().sum();
    let n = dim - 1;
    let a = lambdas.iter().fold(0.0_f64, |m, l: &f64| m.max(l.abs()));
    let b = if g == 1 {
        0.0
    } else {
        -lambdas[lambdas.len() - 1]
    };

    Ok(Spectrum {
        spec: *spec,
        theta1,
        lambdas,
        mults,
        n,
        s: spec.s(),
        a,
        b,
        d: n + 3,
        ricci_positive: ricci_positive(spec),
    })
}

/// Positivity of the ambient Ricci curvature of the minimal leaf.
pub fn ricci_positive(spec: &FamilySpec) -> bool {
    match spec.g() {
        1 => true,
        2 | 4 => spec.q() >= 2,
        3 => spec.m1() > 1,
        _ => false,
    }
}
