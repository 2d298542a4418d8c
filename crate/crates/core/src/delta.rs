//! The pointwise ACS integrand Δ(X, ν) on a minimal isoparametric hypersurface.
//!
//! Two evaluation routes are provided. [`delta_formula`] collapses Δ to the
//! scalars `A, B, C, S_x, S_ν`; [`delta_definition`] instead builds an explicit
//! orthonormal frame of `ν^⊥` and sums the curvature and second-fundamental-form
//! terms through the Gauss equation of `N ⊂ R^{n+3}`. The second route never
//! uses minimality of `N`, so agreement between the two is a genuine check.
//!
//! Δ depends on `(X, ν)` only through block sums over the eigenvalue blocks,
//! captured by [`ReducedPoint`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;

/// Tolerance on `|X| = |ν| = 1` and `⟨X, ν⟩ = 0`.
pub const PAIR_TOL: f64 = 1e-12;
/// Tolerance on the feasibility constraints of a reduced point.
pub const REDUCED_TOL: f64 = 1e-9;

/// An orthonormal pair `(X, ν)` in principal-frame coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientPair {
    pub x: Vec<f64>,
    pub nu: Vec<f64>,
}

impl AmbientPair {
    /// Checks unit length and orthogonality at [`PAIR_TOL`].
    pub fn new(x: Vec<f64>, nu: Vec<f64>) -> Result<Self> {
        let pair = AmbientPair { x, nu };
        pair.check()?;
        Ok(pair)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn check(&self) -> Result<()> {
        if self.x.len() != self.nu.len() {
            return Err(Error::DimensionMismatch {
                expected: self.x.len(),
                found: self.nu.len(),
            });
        }
        let xx = dot(&self.x, &self.x);
        let vv = dot(&self.nu, &self.nu);
        let xv = dot(&self.x, &self.nu);
        if (xx.sqrt() - 1.0).abs() > PAIR_TOL {
            return Err(Error::NotOrthonormal(format!("|X| = {}", xx.sqrt())));
        }
        if (vv.sqrt() - 1.0).abs() > PAIR_TOL {
            return Err(Error::NotOrthonormal(format!("|nu| = {}", vv.sqrt())));
        }
        if xv.abs() > PAIR_TOL {
            return Err(Error::NotOrthonormal(format!("<X, nu> = {xv}")));
        }
        Ok(())
    }

    /// The pair with roles of `X` and `ν` exchanged.
    pub fn swapped(&self) -> Self {
        AmbientPair {
            x: self.nu.clone(),
            nu: self.x.clone(),
        }
    }

    fn check_against(&self, spec: &Spectrum) -> Result<()> {
        if self.x.len() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: self.x.len(),
            });
        }
        self.check()
    }
}

/// The scalars of the collapsed formula and the resulting Δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaBreakdown {
    /// `A = Σ x_i² λ_i`.
    pub a: f64,
    /// `B = Σ ν_i² λ_i`.
    pub b: f64,
    /// `C = Σ x_i ν_i λ_i`.
    pub c: f64,
    /// `S_x = Σ x_i² λ_i²`.
    pub sx: f64,
    /// `S_ν = Σ ν_i² λ_i²`.
    pub snu: f64,
    pub delta: f64,
}

/// The four sums defining Δ, evaluated term by term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefinitionBreakdown {
    /// `Σ_k R^N(e_k, X, e_k, X)`.
    pub curvature_sum: f64,
    /// `Ric_N(ν, ν) |X|²`.
    pub ricci_nu: f64,
    /// `Σ_k |Π(e_k, X)|²`.
    pub pi_x_sum: f64,
    /// `Σ_k |Π(e_k, ν)|² |X|²`.
    pub pi_nu_sum: f64,
}

impl DefinitionBreakdown {
    pub fn delta(&self) -> f64 {
        self.curvature_sum + self.ricci_nu - self.pi_x_sum - self.pi_nu_sum
    }
}

/// Block variables carrying all of Δ's dependence on `(X, ν)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedPoint {
    /// `p_i = Σ_{j ∈ block i} x_j²`.
    pub p: Vec<f64>,
    /// `q_i = Σ_{j ∈ block i} ν_j²`.
    pub q: Vec<f64>,
    /// `r_i = Σ_{j ∈ block i} x_j ν_j`.
    pub r: Vec<f64>,
}

impl ReducedPoint {
    pub fn check(&self, spec: &Spectrum) -> Result<()> {
        let g = spec.lambdas.len();
        for (name, v) in [("p", &self.p), ("q", &self.q), ("r", &self.r)] {
            if v.len() != g {
                return Err(Error::InfeasiblePoint(format!(
                    "{name} has length {}, expected {g}",
                    v.len()
                )));
            }
        }
        let sp: f64 = self.p.iter().sum();
        let sq: f64 = self.q.iter().sum();
        let sr: f64 = self.r.iter().sum();
        if (sp - 1.0).abs() > REDUCED_TOL || (sq - 1.0).abs() > REDUCED_TOL {
            return Err(Error::InfeasiblePoint(format!(
                "sum p = {sp}, sum q = {sq}"
            )));
        }
        if sr.abs() > REDUCED_TOL {
            return Err(Error::InfeasiblePoint(format!("sum r = {sr}")));
        }
        for i in 0..g {
            let (p, q, r) = (self.p[i], self.q[i], self.r[i]);
            if p < -REDUCED_TOL || q < -REDUCED_TOL {
                return Err(Error::InfeasiblePoint(format!(
                    "negative weight in block {i}: p = {p}, q = {q}"
                )));
            }
            if r * r > p.max(0.0) * q.max(0.0) + REDUCED_TOL {
                return Err(Error::InfeasiblePoint(format!(
                    "block {i}: r^2 = {} exceeds p q = {}",
                    r * r,
                    p * q
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Collapsed formula on raw coordinate vectors; no feasibility checks.
pub(crate) fn breakdown_unchecked(n: u32, lam: &[f64], x: &[f64], nu: &[f64]) -> DeltaBreakdown {
    let (mut a, mut b, mut c, mut sx, mut snu) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((&l, &xi), &vi) in lam.iter().zip(x).zip(nu) {
        let l2 = l * l;
        a += xi * xi * l;
        b += vi * vi * l;
        c += xi * vi * l;
        sx += xi * xi * l2;
        snu += vi * vi * l2;
    }
    let delta = collapsed(n, a, b, c, sx, snu);
    DeltaBreakdown {
        a,
        b,
        c,
        sx,
        snu,
        delta,
    }
}

#[inline]
fn collapsed(n: u32, a: f64, b: f64, c: f64, sx: f64, snu: f64) -> f64 {
    (2.0 * n as f64 - 2.0) - 2.0 * sx - 2.0 * snu + 2.0 * c * c + b * b - a * b
}

/// Δ and its ingredients from the collapsed closed formula.
pub fn delta_formula(spec: &Spectrum, pair: &AmbientPair) -> Result<DeltaBreakdown> {
    pair.check_against(spec)?;
    let lam = spec.coordinate_lambdas();
    Ok(breakdown_unchecked(spec.n, &lam, &pair.x, &pair.nu))
}

/// `Π(U, V)` for `N ⊂ S^{n+2} ⊂ R^{n+3}`, as its `(η, ξ)` components.
fn second_fundamental_form(lam: &[f64], u: &[f64], v: &[f64]) -> [f64; 2] {
    let mut eta = 0.0;
    let mut xi = 0.0;
    for ((&l, &ui), &vi) in lam.iter().zip(u).zip(v) {
        eta += l * ui * vi;
        xi += ui * vi;
    }
    [eta, xi]
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

/// Sectional numerator `R^N(U, V, U, V)` from the Gauss equation in flat space.
fn curvature(lam: &[f64], u: &[f64], v: &[f64]) -> f64 {
    let uu = second_fundamental_form(lam, u, u);
    let vv = second_fundamental_form(lam, v, v);
    let uv = second_fundamental_form(lam, u, v);
    uu[0] * vv[0] + uu[1] * vv[1] - norm2(uv)
}

/// Orthonormal basis of `ν^⊥` from the Householder reflector sending `ν` to a
/// coordinate axis.
fn complement_frame(nu: &[f64]) -> Vec<Vec<f64>> {
    let dim = nu.len();
    let last = dim - 1;
    let mut w = nu.to_vec();
    let sign = if nu[last] >= 0.0 { 1.0 } else { -1.0 };
    w[last] += sign * dot(nu, nu).sqrt();
    let ww = dot(&w, &w);
    (0..last)
        .map(|k| {
            let scale = 2.0 * w[k] / ww;
            let mut col: Vec<f64> = w.iter().map(|wi| -scale * wi).collect();
            col[k] += 1.0;
            col
        })
        .collect()
}

/// The four defining sums of Δ, each evaluated literally over a frame
/// `{e_k}` of `ν^⊥` through the Gauss equation.
pub fn delta_definition(spec: &Spectrum, pair: &AmbientPair) -> Result<DefinitionBreakdown> {
    pair.check_against(spec)?;
    let lam = spec.coordinate_lambdas();
    let (x, nu) = (&pair.x, &pair.nu);
    let frame = complement_frame(nu);
    let x_norm2 = dot(x, x);

    let mut out = DefinitionBreakdown {
        curvature_sum: 0.0,
        ricci_nu: 0.0,
        pi_x_sum: 0.0,
        pi_nu_sum: 0.0,
    };
    for e in &frame {
        out.curvature_sum += curvature(&lam, e, x);
        out.ricci_nu += curvature(&lam, e, nu);
        out.pi_x_sum += norm2(second_fundamental_form(&lam, e, x));
        out.pi_nu_sum += norm2(second_fundamental_form(&lam, e, nu));
    }
    out.ricci_nu *= x_norm2;
    out.pi_nu_sum *= x_norm2;
    Ok(out)
}

/// Block sums of `x_j²`, `ν_j²` and `x_j ν_j`.
pub fn reduce(spec: &Spectrum, pair: &AmbientPair) -> Result<ReducedPoint> {
    pair.check_against(spec)?;
    Ok(reduce_unchecked(spec, &pair.x, &pair.nu))
}

pub(crate) fn reduce_unchecked(spec: &Spectrum, x: &[f64], nu: &[f64]) -> ReducedPoint {
    let ranges = spec.block_ranges();
    let mut pt = ReducedPoint {
        p: Vec::with_capacity(ranges.len()),
        q: Vec::with_capacity(ranges.len()),
        r: Vec::with_capacity(ranges.len()),
    };
    for r in ranges {
        pt.p.push(dot(&x[r.clone()], &x[r.clone()]));
        pt.q.push(dot(&nu[r.clone()], &nu[r.clone()]));
        pt.r.push(dot(&x[r.clone()], &nu[r]));
    }
    pt
}

/// Δ as a function of the block variables, without feasibility checks.
pub(crate) fn delta_reduced_unchecked(spec: &Spectrum, pt: &ReducedPoint) -> f64 {
    let (mut a, mut b, mut c, mut sx, mut snu) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, &l) in spec.lambdas.iter().enumerate() {
        a += pt.p[i] * l;
        b += pt.q[i] * l;
        c += pt.r[i] * l;
        sx += pt.p[i] * l * l;
        snu += pt.q[i] * l * l;
    }
    collapsed(spec.n, a, b, c, sx, snu)
}

pub fn delta_reduced(spec: &Spectrum, pt: &ReducedPoint) -> Result<f64> {
    pt.check(spec)?;
    Ok(delta_reduced_unchecked(spec, pt))
}

/// An ambient pair realising the given block variables.
///
/// In block `i`, `X` is placed along the first in-block direction `f₁` and
/// `ν` in `span{f₁, f₂}` with the prescribed `p_i, q_i, r_i`.
pub fn lift(spec: &Spectrum, pt: &ReducedPoint) -> Result<AmbientPair> {
    pt.check(spec)?;
    let dim = spec.dim();
    let mut x = vec![0.0; dim];
    let mut nu = vec![0.0; dim];
    for (i, range) in spec.block_ranges().into_iter().enumerate() {
        let p = pt.p[i].max(0.0);
        let q = pt.q[i].max(0.0);
        let r = pt.r[i];
        let f1 = range.start;
        if p <= 0.0 {
            // Cauchy-Schwarz forces r = 0; the check above enforces it
            nu[f1] = q.sqrt();
            continue;
        }
        let sp = p.sqrt();
        x[f1] = sp;
        let along = r / sp;
        let across2 = q - along * along;
        if range.len() == 1 {
            if across2.abs() > REDUCED_TOL {
                return Err(Error::LiftImpossible { block: i });
            }
            nu[f1] = r.signum() * q.sqrt();
        } else {
            nu[f1] = along;
            nu[f1 + 1] = across2.max(0.0).sqrt();
        }
    }
    let pair = AmbientPair { x, nu };
    pair.check()?;
    Ok(pair)
}

/// Euclidean gradient of the collapsed formula with respect to `(x, ν)`,
/// treating both as unconstrained vectors.
pub fn delta_gradient(spec: &Spectrum, x: &[f64], nu: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let lam = spec.coordinate_lambdas();
    let bd = breakdown_unchecked(spec.n, &lam, x, nu);
    gradient_with(&lam, &bd, x, nu)
}

pub(crate) fn gradient_with(
    lam: &[f64],
    bd: &DeltaBreakdown,
    x: &[f64],
    nu: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let mut gx = Vec::with_capacity(x.len());
    let mut gnu = Vec::with_capacity(x.len());
    for ((&l, &xi), &vi) in lam.iter().zip(x).zip(nu) {
        gx.push(-4.0 * xi * l * l + 4.0 * bd.c * vi * l - 2.0 * bd.b * xi * l);
        gnu.push(-4.0 * vi * l * l + 4.0 * bd.c * xi * l + (4.0 * bd.b - 2.0 * bd.a) * vi * l);
    }
    (gx, gnu)
}

/// Δ at arbitrary (not necessarily orthonormal) coordinate vectors.
pub fn delta_value_unconstrained(spec: &Spectrum, x: &[f64], nu: &[f64]) -> f64 {
    let lam = spec.coordinate_lambdas();
    breakdown_unchecked(spec.n, &lam, x, nu).delta
}
