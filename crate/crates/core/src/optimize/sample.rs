//! Monte Carlo upper bounds on min Δ.
//!
//! Pairs are the Gram-Schmidt orthonormalisation of two independent standard
//! Gaussian vectors in `R^{n+1}`. Δ only sees the per-block Gram matrices of the
//! two raw vectors, which are independent `Wishart_2(μ_i, I)` draws, so the
//! bulk sampler draws those directly (Bartlett decomposition) instead of all
//! `2(n+1)` coordinates. [`random_pair`] draws full coordinate vectors and is
//! used wherever an actual pair is needed.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded from a `u64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::delta::{
    delta_formula, delta_reduced_unchecked, lift, reduce, AmbientPair, ReducedPoint,
};
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

use super::refine::{orthonormalize, refine_local};
use super::{Method, MinResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    pub n_samples: usize,
    pub seed: u64,
    pub refine_top: usize,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            n_samples: 100_000,
            seed: 42,
            refine_top: 16,
            max_iter: 500,
            tol: 1e-9,
        }
    }
}

/// A uniformly distributed orthonormal pair in dimension `n + 1`.
///
/// Panics when `n + 1 < 2`.
pub fn random_pair<R: Rng + ?Sized>(spec: &Spectrum, rng: &mut R) -> AmbientPair {
    let dim = spec.dim();
    assert!(dim >= 2, "no orthonormal pair in dimension {dim}");
    loop {
        let mut x: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let mut nu: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        orthonormalize(&mut x, &mut nu);
        if x.iter().chain(&nu).all(|v| v.is_finite()) {
            return AmbientPair { x, nu };
        }
    }
}

/// Per-block Bartlett factors of a 2x2 Wishart matrix with `μ` degrees of freedom.
struct BlockSampler {
    first: ChiSquared<f64>,
    second: Option<ChiSquared<f64>>,
}

impl BlockSampler {
    fn new(mu: u32) -> Self {
        BlockSampler {
            first: ChiSquared::new(mu as f64).expect("positive degrees of freedom"),
            second: (mu > 1).then(|| ChiSquared::new(mu as f64 - 1.0).expect("positive")),
        }
    }

    /// `(|x_i|², ⟨x_i, ν_i⟩, |ν_i|²)` for raw Gaussian block vectors.
    fn gram<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64, f64) {
        let c1 = self.first.sample(rng).sqrt();
        let z: f64 = rng.sample(StandardNormal);
        let c2sq = self.second.as_ref().map_or(0.0, |d| d.sample(rng));
        (c1 * c1, c1 * z, z * z + c2sq)
    }
}

/// The reduced point of one uniformly distributed orthonormal pair.
fn draw_reduced<R: Rng + ?Sized>(blocks: &[BlockSampler], rng: &mut R, out: &mut ReducedPoint) {
    let g = blocks.len();
    let mut xx = [0.0; 6];
    let mut xv = [0.0; 6];
    let mut vv = [0.0; 6];
    for (i, b) in blocks.iter().enumerate() {
        (xx[i], xv[i], vv[i]) = b.gram(rng);
    }
    let xx_tot: f64 = xx[..g].iter().sum();
    let xv_tot: f64 = xv[..g].iter().sum();
    let c = xv_tot / xx_tot;
    // ν' = ν − c x, blockwise
    let mut vv_tot = 0.0;
    for i in 0..g {
        vv[i] = vv[i] - 2.0 * c * xv[i] + c * c * xx[i];
        xv[i] -= c * xx[i];
        vv_tot += vv[i];
    }
    let norm = (xx_tot * vv_tot).sqrt();
    for i in 0..g {
        out.p[i] = xx[i] / xx_tot;
        out.q[i] = vv[i] / vv_tot;
        out.r[i] = xv[i] / norm;
    }
}

/// Draws `n` reduced points from the rotation-invariant pair distribution.
pub fn sample_reduced<R: Rng + ?Sized>(
    spec: &Spectrum,
    n: usize,
    rng: &mut R,
) -> Vec<ReducedPoint> {
    let blocks: Vec<BlockSampler> = spec.mults.iter().map(|&mu| BlockSampler::new(mu)).collect();
    let g = blocks.len();
    (0..n)
        .map(|_| {
            let mut pt = ReducedPoint {
                p: vec![0.0; g],
                q: vec![0.0; g],
                r: vec![0.0; g],
            };
            draw_reduced(&blocks, rng, &mut pt);
            pt
        })
        .collect()
}

pub fn sample_min_delta(spec: &Spectrum, n_samples: usize, seed: u64) -> Result<MinResult> {
    sample_min_delta_with(
        spec,
        &SampleOptions {
            n_samples,
            seed,
            ..SampleOptions::default()
        },
    )
}

/// Best of `n_samples` random pairs after local refinement of the best
/// `refine_top` of them. The value is an upper bound on min Δ.
pub fn sample_min_delta_with(spec: &Spectrum, opts: &SampleOptions) -> Result<MinResult> {
    if opts.n_samples == 0 {
        return Err(Error::ZeroSamples);
    }
    if spec.dim() < 2 {
        return Err(Error::NoPairs { dim: spec.dim() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let blocks: Vec<BlockSampler> = spec.mults.iter().map(|&mu| BlockSampler::new(mu)).collect();
    let g = blocks.len();
    let keep = opts.refine_top.max(1);

    // ascending by Δ, at most `keep` entries
    let mut best: Vec<(f64, ReducedPoint)> = Vec::with_capacity(keep + 1);
    let mut pt = ReducedPoint {
        p: vec![0.0; g],
        q: vec![0.0; g],
        r: vec![0.0; g],
    };
    for _ in 0..opts.n_samples {
        draw_reduced(&blocks, &mut rng, &mut pt);
        let d = delta_reduced_unchecked(spec, &pt);
        if !d.is_finite() {
            continue;
        }
        if best.len() < keep || d < best[best.len() - 1].0 {
            let at = best.partition_point(|(v, _)| *v <= d);
            best.insert(at, (d, pt.clone()));
            best.truncate(keep);
        }
    }

    let mut winner: Option<(f64, AmbientPair)> = None;
    for (_, cand) in &best {
        let start = match lift(spec, cand) {
            Ok(pair) => pair,
            Err(_) => {
                // a sample on the edge of the feasibility tolerance; draw a fresh pair
                random_pair(spec, &mut rng)
            }
        };
        let refined = refine_local(spec, &start, opts.tol, opts.max_iter)?;
        let d = delta_formula(spec, &refined)?.delta;
        if winner.as_ref().is_none_or(|(v, _)| d < *v) {
            winner = Some((d, refined));
        }
    }
    let (min_delta, pair) = match winner {
        Some(w) => w,
        None => {
            let pair = random_pair(spec, &mut rng);
            (delta_formula(spec, &pair)?.delta, pair)
        }
    };
    Ok(MinResult {
        min_delta,
        witness: reduce(spec, &pair)?,
        witness_pair: Some(pair),
        method: Method::SampledRefined,
        certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::delta_formula;
    use crate::spectra::{minimal_spectrum, validate_family};

    fn spectrum(g: u32, m1: u32, m2: u32) -> Spectrum {
        minimal_spectrum(&validate_family(g, m1, m2).unwrap()).unwrap()
    }

    #[test]
    fn circle_has_no_pairs() {
        let sp = minimal_spectrum(&validate_family(1, 1, 1).unwrap()).unwrap();
        assert_eq!(sample_min_delta(&sp, 10, 1), Err(Error::NoPairs { dim: 1 }));
    }

    #[test]
    fn zero_samples_rejected() {
        assert_eq!(
            sample_min_delta(&spectrum(3, 4, 4), 0, 1),
            Err(Error::ZeroSamples)
        );
    }

    #[test]
    fn g1_samples_are_constant() {
        let sp = spectrum(1, 4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for pt in sample_reduced(&sp, 100, &mut rng) {
            assert_eq!(delta_reduced_unchecked(&sp, &pt), 4.0);
        }
        assert_eq!(sample_min_delta(&sp, 1000, 3).unwrap().min_delta, 4.0);
    }

    #[test]
    fn deterministic_for_seed() {
        let sp = spectrum(4, 2, 3);
        let a = sample_min_delta(&sp, 5000, 11).unwrap();
        let b = sample_min_delta(&sp, 5000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reduced_samples_feasible() {
        let sp = spectrum(2, 1, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for pt in sample_reduced(&sp, 2000, &mut rng) {
            pt.check(&sp).unwrap();
            // the simple block sits on the Cauchy-Schwarz boundary
            assert!((pt.r[0] * pt.r[0] - pt.p[0] * pt.q[0]).abs() < 1e-12);
            lift(&sp, &pt).unwrap();
        }
    }

    /// Block sampler and full-coordinate sampler give the same law of Δ.
    #[test]
    fn bartlett_matches_coordinate_sampling() {
        for (g, m1, m2) in [(3, 2, 2), (4, 2, 5), (2, 1, 4)] {
            let sp = spectrum(g, m1, m2);
            let n = 40_000;
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let reduced: Vec<f64> = sample_reduced(&sp, n, &mut rng)
                .iter()
                .map(|pt| delta_reduced_unchecked(&sp, pt))
                .collect();
            let full: Vec<f64> = (0..n)
                .map(|_| {
                    delta_formula(&sp, &random_pair(&sp, &mut rng))
                        .unwrap()
                        .delta
                })
                .collect();
            let stats = |v: &[f64]| {
                let m = v.iter().sum::<f64>() / v.len() as f64;
                let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
                (m, var)
            };
            let (m1_, v1) = stats(&reduced);
            let (m2_, v2) = stats(&full);
            let se = ((v1 + v2) / n as f64).sqrt();
            assert!(
                (m1_ - m2_).abs() < 5.0 * se,
                "({g},{m1},{m2}): {m1_} vs {m2_} se {se}"
            );
            assert!((v1 / v2 - 1.0).abs() < 0.05, "variance {v1} vs {v2}");
        }
    }
}
