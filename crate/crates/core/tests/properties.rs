use acs_core::bounds::{bound_report, moment_g, pointwise_threshold};
use acs_core::delta::{
    delta_definition, delta_formula, delta_reduced, lift, reduce, AmbientPair, ReducedPoint,
};
use acs_core::optimize::random_pair;
use acs_core::{minimal_spectrum, validate_family, Spectrum};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every valid family with `2 ≤ n + 1 ≤ 60`.
fn all_families() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for g in [1, 2, 3, 4, 6] {
        for m1 in 1..=60 {
            for m2 in 1..=60 {
                if let Ok(f) = validate_family(g, m1, m2) {
                    if (2..=60).contains(&minimal_spectrum(&f).unwrap().dim()) {
                        out.push((g, m1, m2));
                    }
                }
            }
        }
    }
    out
}

fn spectrum((g, m1, m2): (u32, u32, u32)) -> Spectrum {
    minimal_spectrum(&validate_family(g, m1, m2).unwrap()).unwrap()
}

fn family() -> impl Strategy<Value = (u32, u32, u32)> {
    prop::sample::select(all_families())
}

fn g4_family() -> impl Strategy<Value = (u32, u32, u32)> {
    (2u32..=28, 2u32..=28)
        .prop_filter("s ≤ 30", |(a, b)| a + b <= 30)
        .prop_map(|(a, b)| (4, a.min(b), a.max(b)))
}

fn pair(sp: &Spectrum, seed: u64) -> AmbientPair {
    random_pair(sp, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn scaled_tol(v: f64) -> f64 {
    1e-12 * (1.0 + v.abs())
}

/// A random feasible reduced point with `r_i² = p_i q_i` on simple blocks.
fn feasible_point(sp: &Spectrum, rng: &mut ChaCha8Rng) -> ReducedPoint {
    let g = sp.lambdas.len();
    let simplex = |rng: &mut ChaCha8Rng| {
        let w: Vec<f64> = (0..g)
            .map(|_| -rng.random::<f64>().max(1e-300).ln())
            .collect();
        let t: f64 = w.iter().sum();
        w.into_iter().map(|v| v / t).collect::<Vec<_>>()
    };
    if sp.mults.iter().all(|&m| m >= 2) {
        // r = ρ_i √(p_i q_i) with Σ r = 0 via a shift of a free block pair
        let p = simplex(rng);
        let q = simplex(rng);
        let mut r: Vec<f64> = (0..g)
            .map(|i| (rng.random::<f64>() * 2.0 - 1.0) * 0.5 * (p[i] * q[i]).sqrt())
            .collect();
        let total: f64 = r.iter().sum();
        let cap: Vec<f64> = (0..g).map(|i| (p[i] * q[i]).sqrt() - r[i].abs()).collect();
        let room: f64 = cap.iter().sum();
        if total.abs() <= room {
            for i in 0..g {
                r[i] -= total * cap[i] / room;
            }
            return ReducedPoint { p, q, r };
        }
        return ReducedPoint {
            p,
            q,
            r: vec![0.0; g],
        };
    }
    reduce(sp, &pair(sp, rng.random())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn two_routes_agree(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let p = pair(&sp, seed);
        let f = delta_formula(&sp, &p).unwrap().delta;
        let d = delta_definition(&sp, &p).unwrap().delta();
        prop_assert!((f - d).abs() <= 1e-10 * (1.0 + f.abs()), "{f} vs {d}");
    }

    #[test]
    fn definition_parts(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let p = pair(&sp, seed);
        let bd = delta_formula(&sp, &p).unwrap();
        let def = delta_definition(&sp, &p).unwrap();
        let lam = sp.coordinate_lambdas();
        let n = sp.n as f64;
        let w = |v: &[f64], f: &dyn Fn(f64) -> f64| -> f64 {
            v.iter().zip(&lam).map(|(c, &l)| c * c * f(l)).sum()
        };
        let ric_x = w(&p.x, &|l| n - l * l);
        let ric_nu = w(&p.nu, &|l| n - l * l);
        prop_assert!((def.curvature_sum - (ric_x - bd.b * bd.a - 1.0 + bd.c * bd.c)).abs() <= 1e-10 * (1.0 + n));
        prop_assert!((def.ricci_nu - ric_nu).abs() <= 1e-10 * (1.0 + n));
        let pis = w(&p.x, &|l| l * l + 1.0) + w(&p.nu, &|l| l * l + 1.0) - bd.c * bd.c - (bd.b * bd.b + 1.0);
        prop_assert!((def.pi_x_sum + def.pi_nu_sum - pis).abs() <= 1e-10 * (1.0 + n));
    }

    #[test]
    fn breakdown_inequalities(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let bd = delta_formula(&sp, &pair(&sp, seed)).unwrap();
        let (hi, lo) = (sp.lambdas[0], *sp.lambdas.last().unwrap());
        let t = 1e-12 * (1.0 + sp.a_sq());
        prop_assert!(bd.a * bd.a <= bd.sx + t && bd.b * bd.b <= bd.snu + t);
        for v in [bd.a, bd.b] {
            prop_assert!(v >= lo - t && v <= hi + t);
        }
    }

    #[test]
    fn reduction_is_sound(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let p = pair(&sp, seed);
        let f = delta_formula(&sp, &p).unwrap().delta;
        let r = delta_reduced(&sp, &reduce(&sp, &p).unwrap()).unwrap();
        prop_assert!((f - r).abs() <= scaled_tol(f), "{f} vs {r}");
    }

    #[test]
    fn block_rotations_leave_breakdown(fam in family(), seed in any::<u64>(), angle in -3.2f64..3.2) {
        let sp = spectrum(fam);
        let mut p = pair(&sp, seed);
        let before = delta_formula(&sp, &p).unwrap();
        let (c, s) = (angle.cos(), angle.sin());
        for range in sp.block_ranges() {
            // a Givens rotation on each pair of adjacent in-block coordinates
            for i in range.start..range.end.saturating_sub(1) {
                for v in [&mut p.x, &mut p.nu] {
                    let (u, w) = (v[i], v[i + 1]);
                    v[i] = c * u - s * w;
                    v[i + 1] = s * u + c * w;
                }
            }
            // and a reflection of its last coordinate
            p.x[range.end - 1] *= -1.0;
            p.nu[range.end - 1] *= -1.0;
        }
        let after = delta_formula(&sp, &p).unwrap();
        let scale = 1.0 + sp.a_sq();
        for (u, v) in [(before.a, after.a), (before.b, after.b), (before.c, after.c),
                       (before.sx, after.sx), (before.snu, after.snu), (before.delta, after.delta)] {
            prop_assert!((u - v).abs() <= 1e-12 * scale * (1.0 + sp.n as f64), "{u} vs {v}");
        }
    }

    #[test]
    fn sign_flips(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let p = pair(&sp, seed);
        let d = delta_formula(&sp, &p).unwrap().delta;
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let a = delta_formula(&sp, &AmbientPair { x: neg(&p.x), nu: p.nu.clone() }).unwrap().delta;
        let b = delta_formula(&sp, &AmbientPair { x: p.x.clone(), nu: neg(&p.nu) }).unwrap().delta;
        prop_assert!((d - a).abs() <= scaled_tol(d) && (d - b).abs() <= scaled_tol(d));
    }

    #[test]
    fn exchange_identity(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let p = pair(&sp, seed);
        let bd = delta_formula(&sp, &p).unwrap();
        let swapped = delta_formula(&sp, &p.swapped()).unwrap().delta;
        let lhs = bd.delta - swapped;
        let rhs = bd.b * bd.b - bd.a * bd.a;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + bd.delta.abs() + sp.a_sq()), "{lhs} vs {rhs}");
    }

    #[test]
    fn lift_round_trip(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = feasible_point(&sp, &mut rng);
        let back = reduce(&sp, &lift(&sp, &pt).unwrap()).unwrap();
        for (u, v) in pt.p.iter().chain(&pt.q).chain(&pt.r).zip(back.p.iter().chain(&back.q).chain(&back.r)) {
            prop_assert!((u - v).abs() <= 1e-10, "{pt:?} vs {back:?}");
        }
    }

    #[test]
    fn chord_bounds(fam in family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        prop_assume!(sp.g() >= 2);
        let bd = delta_formula(&sp, &pair(&sp, seed)).unwrap();
        let (a, b) = sp.chord_interval();
        let sign = sp.orientation();
        let t = 1e-12 * (1.0 + a * b);
        prop_assert!(bd.sx <= (a - b) * sign * bd.a + a * b + t);
        prop_assert!(bd.snu <= (a - b) * sign * bd.b + a * b + t);
    }

    #[test]
    fn g_is_monotone_in_a(fam in g4_family(), u in 0.0f64..=1.0, v in 0.0f64..=1.0, w in 0.0f64..=1.0) {
        let sp = spectrum(fam);
        prop_assume!(bound_report(&sp).b_le_half_a == Some(true));
        let (a, b) = sp.chord_interval();
        let at = |t: f64| -b + t * (a + b);
        let (a1, a2) = (at(u.min(v)), at(u.max(v)));
        let bb = at(w);
        let g1 = moment_g(&sp, a1, bb).unwrap();
        let g2 = moment_g(&sp, a2, bb).unwrap();
        prop_assert!(g2 >= g1 - 1e-12 * (1.0 + a * a));
    }

    #[test]
    fn g_axis_at_top(fam in g4_family(), w in 0.0f64..=1.0) {
        let sp = spectrum(fam);
        prop_assume!(bound_report(&sp).b_le_half_a == Some(true));
        let (a, b) = sp.chord_interval();
        let top = moment_g(&sp, a, a).unwrap();
        let other = moment_g(&sp, a, -b + w * (a + b)).unwrap();
        prop_assert!(other <= top + 1e-12 * (1.0 + a * a));
        prop_assert!((3.0 * a - 2.0 * b) / 2.0 >= a);
        prop_assert!((top - 4.0 * a * a).abs() <= 1e-12 * a * a);
    }

    #[test]
    fn completed_square(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        prop_assert!(b * b - a * b >= -a * a / 4.0 - 1e-9 * (1.0 + a * a + b * b));
        prop_assert!(((b - a / 2.0).powi(2) - a * a / 4.0 - (b * b - a * b)).abs() <= 1e-9 * (1.0 + a * a + b * b));
    }

    #[test]
    fn f_below_four_a_sq(fam in g4_family(), seed in any::<u64>()) {
        let sp = spectrum(fam);
        prop_assume!(bound_report(&sp).b_le_half_a == Some(true));
        let bd = delta_formula(&sp, &pair(&sp, seed)).unwrap();
        let f = acs_core::bounds::f_value(&bd);
        let gv = moment_g(&sp, bd.a, bd.b).unwrap();
        prop_assert!(f <= gv + 1e-9 && gv <= 4.0 * sp.a_sq() + 1e-9);
    }

    #[test]
    fn bound_chain(fam in g4_family()) {
        let sp = spectrum(fam);
        let rep = bound_report(&sp);
        let ext = 2.0 * sp.n as f64 - 2.0 - 4.0 * sp.a_sq();
        prop_assert!(rep.rough <= rep.refined && rep.refined <= ext);
        prop_assert!(((rep.refined - rep.rough) - 0.75 * sp.a_sq()).abs() <= 1e-12 * sp.a_sq());
        prop_assert!(((ext - rep.refined) - 0.25 * sp.a_sq()).abs() <= 1e-12 * sp.a_sq());
        prop_assert_eq!(pointwise_threshold(&sp).unwrap(), ext > 0.0);
    }

    #[test]
    fn relabel_gives_same_spectrum(fam in family()) {
        let (g, m1, m2) = fam;
        let a = spectrum((g, m1, m2));
        let b = spectrum((g, m2, m1));
        let mut ka: Vec<(f64, u32)> = a.lambdas.iter().map(|l| l.abs()).zip(a.mults.iter().copied()).collect();
        let mut kb: Vec<(f64, u32)> = b.lambdas.iter().map(|l| l.abs()).zip(b.mults.iter().copied()).collect();
        ka.sort_by(|x, y| x.partial_cmp(y).unwrap());
        kb.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in ka.iter().zip(&kb) {
            prop_assert!((x.0 - y.0).abs() <= 1e-10 * (1.0 + x.0) && x.1 == y.1);
        }
        prop_assert!((a.a_sq() - b.a_sq()).abs() <= 1e-10 * (1.0 + a.a_sq()));
    }
}

#[test]
fn reduced_cauchy_schwarz_on_many_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fams = [
        (2, 1, 9),
        (2, 3, 6),
        (3, 1, 1),
        (3, 4, 4),
        (4, 1, 6),
        (4, 4, 5),
        (6, 1, 1),
        (6, 2, 2),
    ];
    let mut count = 0;
    for fam in fams {
        let sp = spectrum(fam);
        for _ in 0..1500 {
            let pt = reduce(&sp, &random_pair(&sp, &mut rng)).unwrap();
            pt.check(&sp).unwrap();
            for i in 0..pt.p.len() {
                let pq = pt.p[i] * pt.q[i];
                assert!(pt.r[i] * pt.r[i] <= pq + 1e-15);
                if sp.mults[i] == 1 {
                    assert!((pt.r[i] * pt.r[i] - pq).abs() <= 1e-12);
                }
            }
            count += 1;
        }
    }
    assert!(count >= 10_000);
}

#[test]
fn lift_round_trip_hundred_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fam in [(3, 4, 4), (4, 2, 7), (2, 1, 5), (6, 1, 1)] {
        let sp = spectrum(fam);
        for _ in 0..100 {
            let pt = feasible_point(&sp, &mut rng);
            let back = reduce(&sp, &lift(&sp, &pt).unwrap()).unwrap();
            let d1 = delta_reduced(&sp, &pt).unwrap();
            let d2 = delta_reduced(&sp, &back).unwrap();
            assert!((d1 - d2).abs() <= 1e-10 * (1.0 + d1.abs()));
        }
    }
}
