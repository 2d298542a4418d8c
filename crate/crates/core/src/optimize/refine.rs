//! Projected gradient descent on the Stiefel manifold of orthonormal pairs.

use crate::delta::{breakdown_unchecked, dot, gradient_with, AmbientPair};
use crate::error::Result;
use crate::spectra::Spectrum;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

/// Previous `(x, ν)` and their projected gradients.
type Previous = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct RefineOutcome {
    pub pair: AmbientPair,
    /// Δ after the start and after every accepted step.
    pub history: Vec<f64>,
    /// Norm of the last projected gradient evaluated.
    pub grad_norm: f64,
}

/// Gram-Schmidt on `(x, ν)` with one reorthogonalisation pass.
pub fn orthonormalize(x: &mut [f64], nu: &mut [f64]) {
    let nx = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= nx);
    for _ in 0..2 {
        let c = dot(x, nu);
        nu.iter_mut().zip(x.iter()).for_each(|(v, xi)| *v -= c * xi);
    }
    let nn = dot(nu, nu).sqrt();
    nu.iter_mut().for_each(|v| *v /= nn);
}

pub fn refine_local(
    spec: &Spectrum,
    start: &AmbientPair,
    tol: f64,
    max_iter: usize,
) -> Result<AmbientPair> {
    refine_with_trace(spec, start, tol, max_iter).map(|o| o.pair)
}

/// As [`refine_local`], also returning the Δ trajectory.
pub fn refine_with_trace(
    spec: &Spectrum,
    start: &AmbientPair,
    tol: f64,
    max_iter: usize,
) -> Result<RefineOutcome> {
    crate::delta::delta_formula(spec, start)?;
    let lam = spec.coordinate_lambdas();
    let mut x = start.x.clone();
    let mut nu = start.nu.clone();
    let mut bd = breakdown_unchecked(spec.n, &lam, &x, &nu);
    let mut history = vec![bd.delta];
    let lmax2 = lam.iter().fold(0.0_f64, |m, l| m.max(l * l));
    let mut step = 1.0 / (8.0 * lmax2 + 1.0);
    let mut grad_norm = f64::INFINITY;

    let dim = x.len();
    let mut cx = vec![0.0; dim];
    let mut cnu = vec![0.0; dim];
    // previous iterate and projected gradient, for Barzilai-Borwein trial steps
    let mut prev: Option<Previous> = None;

    for _ in 0..max_iter {
        let (gx, gnu) = gradient_with(&lam, &bd, &x, &nu);
        // Riemannian gradient: G − Y sym(YᵀG) with Y = [x ν]
        let xgx = dot(&x, &gx);
        let ngn = dot(&nu, &gnu);
        let sym = 0.5 * (dot(&x, &gnu) + dot(&nu, &gx));
        let tx: Vec<f64> = (0..dim).map(|i| gx[i] - x[i] * xgx - nu[i] * sym).collect();
        let tn: Vec<f64> = (0..dim)
            .map(|i| gnu[i] - x[i] * sym - nu[i] * ngn)
            .collect();
        let gn2 = dot(&tx, &tx) + dot(&tn, &tn);
        grad_norm = gn2.sqrt();
        if grad_norm <= tol {
            break;
        }

        let mut t = 2.0 * step;
        if let Some((px, pn, ptx, ptn)) = &prev {
            let mut ss = 0.0;
            let mut sy = 0.0;
            for i in 0..dim {
                let (sx, sn) = (x[i] - px[i], nu[i] - pn[i]);
                ss += sx * sx + sn * sn;
                sy += sx * (tx[i] - ptx[i]) + sn * (tn[i] - ptn[i]);
            }
            if sy > 0.0 && ss > 0.0 {
                t = (ss / sy).min(1e3);
            }
        }
        let accepted = loop {
            for i in 0..dim {
                cx[i] = x[i] - t * tx[i];
                cnu[i] = nu[i] - t * tn[i];
            }
            orthonormalize(&mut cx, &mut cnu);
            let cand = breakdown_unchecked(spec.n, &lam, &cx, &cnu);
            if cand.delta <= bd.delta - ARMIJO * t * gn2 {
                break Some(cand);
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        match accepted {
            Some(cand) => {
                prev = Some((x.clone(), nu.clone(), tx, tn));
                std::mem::swap(&mut x, &mut cx);
                std::mem::swap(&mut nu, &mut cnu);
                bd = cand;
                step = t;
                history.push(bd.delta);
            }
            None => break,
        }
    }

    Ok(RefineOutcome {
        pair: AmbientPair { x, nu },
        history,
        grad_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::extremal_pair;
    use crate::delta::delta_formula;
    use crate::optimize::random_pair;
    use crate::spectra::{minimal_spectrum, validate_family};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spectrum(g: u32, m1: u32, m2: u32) -> Spectrum {
        minimal_spectrum(&validate_family(g, m1, m2).unwrap()).unwrap()
    }

    #[test]
    fn extremal_is_fixed_point() {
        let sp = spectrum(4, 4, 11);
        let start = extremal_pair(&sp).unwrap();
        let out = refine_with_trace(&sp, &start, 1e-9, 500).unwrap();
        let d0 = delta_formula(&sp, &start).unwrap().delta;
        let d1 = delta_formula(&sp, &out.pair).unwrap().delta;
        assert!((d1 - d0).abs() < 1e-12);
        assert_eq!(out.history.len(), 1);
    }

    #[test]
    fn g1_converges_immediately() {
        let sp = spectrum(1, 5, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let start = random_pair(&sp, &mut rng);
        let out = refine_with_trace(&sp, &start, 1e-9, 500).unwrap();
        assert_eq!(out.history, vec![6.0]);
        assert_eq!(out.pair, start);
    }

    #[test]
    fn descent_from_random_starts() {
        let sp = spectrum(3, 4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let start = random_pair(&sp, &mut rng);
            let out = refine_with_trace(&sp, &start, 1e-9, 500).unwrap();
            assert!(out.history.windows(2).all(|w| w[1] <= w[0]));
            let end = *out.history.last().unwrap();
            assert!(end >= 7.25 - 1e-6, "{end}");
            out.pair.check().unwrap();
        }
    }

    #[test]
    fn rejects_infeasible_start() {
        let sp = spectrum(3, 4, 4);
        let bad = AmbientPair {
            x: vec![1.0; 12],
            nu: vec![0.0; 12],
        };
        assert!(refine_local(&sp, &bad, 1e-9, 10).is_err());
    }
}
