use l1gv::acsv::{plateau_direction, solve_critical_point, CriticalProblem};
use l1gv::bounds::closed_form::{
    hypercube_tau_of_y, pos_capacity_point, std_zeros_capacity_point, std_zeros_capacity_w,
};
use l1gv::bounds::*;
use l1gv::entropy::h2;
use l1gv::family::SpaceFamily;
use proptest::prelude::*;

fn families() -> Vec<SpaceFamily> {
    vec![
        SpaceFamily::StdSimplex { rho: 2.0 },
        SpaceFamily::StdSimplexZeros { rho: 2.0, tau: 1.4 },
        SpaceFamily::PosSimplex { rho: 0.3 },
        SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 },
        SpaceFamily::InvSimplex { rho: 0.3 },
        SpaceFamily::Hypercube { q: 4 },
        SpaceFamily::HypercubeZeros { q: 4, tau: 0.3 },
    ]
}

/// Golden-section maximum of `f` on `[a, b]`.
fn argmax(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    (a + b) / 2.0
}

#[test]
fn closed_forms_agree_with_newton() {
    for fam in families() {
        let dmax = gv_delta_max(&fam).unwrap();
        for k in 1..10 {
            let delta = dmax * k as f64 / 10.0;
            let cf = closed_form_point(&fam, delta).unwrap();
            let p = CriticalProblem::new(fam.reduced_denominator(), fam.direction(delta)).unwrap();
            let nw = solve_critical_point(&p, None).unwrap();
            for (a, b) in cf.iter().zip(&nw.point) {
                assert!((a - b).abs() < 1e-8, "{fam:?} delta {delta}: {cf:?} vs {:?}", nw.point);
            }
        }
    }
}

#[test]
fn capacities_match_single_space_critical_rates() {
    for fam in families() {
        let (h, dir) = fam.capacity_denominator();
        let s = solve_critical_point(&CriticalProblem::new(h, dir).unwrap(), None).unwrap();
        assert!((s.rate - capacity(&fam).unwrap()).abs() < 1e-9, "{fam:?}");
    }
    let (rho, tau) = (2.0, 1.4);
    let fam = SpaceFamily::StdSimplexZeros { rho, tau };
    let (h, dir) = fam.capacity_denominator();
    let s = solve_critical_point(&CriticalProblem::new(h, dir).unwrap(), None).unwrap();
    let cp = std_zeros_capacity_point(rho, tau);
    for (a, b) in cp.iter().zip(&s.point) {
        assert!((a - b).abs() < 1e-9);
    }
    assert!((s.point[2] - std_zeros_capacity_w(rho, tau)).abs() < 1e-9);
    let fam = SpaceFamily::PosSimplex { rho: 0.3 };
    let (h, dir) = fam.capacity_denominator();
    let s = solve_critical_point(&CriticalProblem::new(h, dir).unwrap(), None).unwrap();
    assert!((s.point[1] - pos_capacity_point(0.3)[1]).abs() < 1e-9);
}

#[test]
fn landmarks() {
    let std2 = SpaceFamily::StdSimplex { rho: 2.0 };
    assert!((gv_delta_max(&std2).unwrap() - 1.5).abs() < 1e-12);
    assert!(gv_rate(&std2, 1.5).unwrap().abs() < 1e-9);
    assert!(gv_rate(&std2, 1.49).unwrap() > 0.0);
    let z4 = SpaceFamily::Hypercube { q: 4 };
    assert!((gv_delta_max(&z4).unwrap() - 1.25).abs() < 1e-12);
    assert!(gv_rate(&z4, 1.25).unwrap().abs() < 1e-9);
    assert!((delta_max(&z4, BoundKind::GvMr, RhoMode::Fixed).unwrap() - 9.0 / 7.0).abs() < 1e-12);
    assert!((hypercube_tau_of_y(4, 1.0) - 5.0 / 14.0).abs() < 1e-12);
    assert!((hypercube_tau_of_y(4, 1.0 - 1e-7) - 5.0 / 14.0).abs() < 1e-6);
    let pos = SpaceFamily::PosSimplex { rho: 0.5 };
    assert!((gv_delta_max(&pos).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    let o = gv_rate_optimized_rho(0.0).unwrap();
    assert!((o.rho - 0.5).abs() < 1e-12 && (o.rate - 1.0).abs() < 1e-9);
    // 9δ² − 4δ + 4 = 3.56 at δ = 0.2
    assert!((gv_rho_opt(0.2) - 0.43915047169858495).abs() < 1e-12);
    assert!((mr_rho_opt(0.0) - 0.5).abs() < 1e-12);
    // (2√½)/(3√½ + √(5/2)) = (3 − √5)/2
    assert!((mr_rho_opt(0.5) - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    let m = gvmr_optimized_rho_from_lambda(0.0).unwrap();
    assert!(m.delta.abs() < 1e-15 && (m.rate - 1.0).abs() < 1e-9);
    assert!(mr_opt_parameters(1.0 - 1e-9).2 > 1.999);
    let mr0 = gvmr_rate(&std2, 0.0).unwrap();
    assert!((mr0.tau - 4.0 / 3.0).abs() < 1e-12);
    assert!((mr0.rate - capacity(&std2).unwrap()).abs() < 1e-9);
}

#[test]
fn comparison_landmarks() {
    let std2 = SpaceFamily::StdSimplex { rho: 2.0 };
    let sp0 = comparison_rate(BoundKind::SpherePacking, &std2, 0.0).unwrap();
    assert!((sp0 - capacity(&std2).unwrap()).abs() < 1e-12);
    assert!((sp0 - 2.7548875021634687).abs() < 1e-12);
    let pos = SpaceFamily::PosSimplex { rho: 0.5 };
    assert!(comparison_rate(BoundKind::KolesnikKrachkovsky, &pos, 0.5).unwrap().abs() < 1e-15);
    let z4 = SpaceFamily::Hypercube { q: 4 };
    assert!(comparison_rate(BoundKind::Lee, &z4, 1.0).unwrap().abs() < 1e-15);
    assert!((comparison_rate(BoundKind::Lee, &z4, 0.0).unwrap() - 2.0).abs() < 1e-15);
    // constant-weight curve reaches zero at 2(ρ−1)/ρ and stays there
    let cw_max = delta_max(&std2, BoundKind::ConstantWeightGv, RhoMode::Fixed).unwrap();
    assert_eq!(cw_max, 1.0);
    assert!(comparison_rate(BoundKind::ConstantWeightGv, &std2, 1.0).unwrap().abs() < 1e-12);
    assert!(comparison_rate(BoundKind::ConstantWeightGv, &std2, 1.7).unwrap().abs() < 1e-12);
    assert!(comparison_rate(BoundKind::ConstantWeightGv, &std2, 0.99).unwrap() > 0.0);
    assert!(comparison_rate(BoundKind::KolesnikKrachkovsky, &pos, 0.6).is_err());
    assert!(comparison_rate(BoundKind::Lee, &std2, 0.5).is_err());
}

#[test]
fn plateau_solver_reproduces_delta_max() {
    for fam in families() {
        let dm = gv_delta_max(&fam).unwrap();
        let h = fam.reduced_denominator();
        let k = if fam.kind().is_hypercube() { 1 } else { 2 };
        let (d, s) = plateau_direction(&h, &fam.direction(dm / 2.0), k).unwrap();
        assert!((d - dm).abs() < 1e-8, "{fam:?}: {d} vs {dm}");
        assert_eq!(s.point[k], 1.0);
    }
}

#[test]
fn optimized_rho_is_the_numerical_argmax() {
    for delta in [0.1, 0.3, 0.5] {
        let best = argmax(|r| gv_rate(&SpaceFamily::PosSimplex { rho: r }, delta).unwrap(), 0.01, 0.99);
        assert!((best - gv_rho_opt(delta)).abs() < 1e-5, "delta {delta}: {best}");
    }
    for delta in [0.2, 0.5, 0.9] {
        let best = argmax(|r| gvmr_rate(&SpaceFamily::PosSimplex { rho: r }, delta).unwrap().rate, 0.05, 0.95);
        let o = gvmr_rate_optimized_rho(delta).unwrap();
        assert!((best - o.rho).abs() < 1e-4, "delta {delta}: {best} vs {}", o.rho);
        let direct = gvmr_rate(&SpaceFamily::PosSimplex { rho: o.rho }, delta).unwrap();
        assert!((direct.rate - o.rate).abs() < 1e-9);
        assert!((direct.tau - o.tau).abs() < 1e-9);
    }
}

#[test]
fn optimized_rho_residual_vanishes() {
    for i in 1..=50 {
        let delta = 0.9 * i as f64 / 51.0;
        let o = gv_rate_optimized_rho(delta).unwrap();
        assert!(o.residual.abs() < 1e-8, "delta {delta}: {}", o.residual);
    }
}

#[test]
fn mr_reduction_at_initial_tau() {
    let rho = 2.0;
    let tau = rho * rho / (1.0 + rho);
    let base = SpaceFamily::StdSimplex { rho };
    let sub = SpaceFamily::StdSimplexZeros { rho, tau };
    assert!((capacity(&sub).unwrap() - capacity(&base).unwrap()).abs() < 1e-12);
    assert!((std_zeros_capacity_w(rho, tau) - 1.0).abs() < 1e-12);
    for delta in [0.2, 0.6, 1.0, 1.4] {
        let a = gv_rate(&sub, delta).unwrap();
        let b = gv_rate(&base, delta).unwrap();
        // same capacity, smaller balls: the constrained rate is strictly larger for δ > 0
        assert!(a > b + 1e-6, "delta {delta}: {a} vs {b}");
    }
}

#[test]
fn coupled_coordinates_match_at_mr_optimum() {
    for (fam, grid) in [
        (SpaceFamily::StdSimplex { rho: 2.0 }, vec![0.1, 0.5, 1.0, 1.5]),
        (SpaceFamily::PosSimplex { rho: 0.3 }, vec![0.05, 0.2, 0.5, 1.0]),
        (SpaceFamily::Hypercube { q: 4 }, vec![0.1, 0.5, 1.0, 1.2]),
        (SpaceFamily::Hypercube { q: 3 }, vec![0.2, 0.6]),
    ] {
        for d in grid {
            let m = gvmr_rate(&fam, d).unwrap();
            let (wc, wb) = (m.aux("w_cap").unwrap(), m.aux("w_ball").unwrap());
            assert!((wc - wb).abs() < 1e-8 * wc.max(1.0), "{fam:?} delta {d}: {wc} vs {wb}");
        }
    }
}

#[test]
fn mr_tau_is_a_maximizer() {
    // 2·Cap − T̃ over τ peaks at the reported τ_opt
    let rho = 2.0;
    for delta in [0.3, 0.9] {
        let m = gvmr_rate(&SpaceFamily::StdSimplex { rho }, delta).unwrap();
        let f = |t: f64| {
            let sub = SpaceFamily::StdSimplexZeros { rho, tau: t };
            gv_rate(&sub, delta).unwrap()
        };
        let best = argmax(f, 1.01, 1.99);
        assert!((best - m.tau).abs() < 1e-4, "delta {delta}: {best} vs {}", m.tau);
        assert!((f(best) - m.rate).abs() < 1e-9);
    }
    let q = 4;
    let m = gvmr_rate(&SpaceFamily::Hypercube { q }, 0.6).unwrap();
    let best = argmax(|t| gv_rate(&SpaceFamily::HypercubeZeros { q, tau: t }, 0.6).unwrap(), 0.05, 0.6);
    assert!((best - m.tau).abs() < 1e-4);
}

#[test]
fn mr_plateau_beyond_delta_max() {
    let z4 = SpaceFamily::Hypercube { q: 4 };
    let dm = 9.0 / 7.0;
    let before = gvmr_rate(&z4, dm - 1e-3).unwrap();
    assert!(before.rate > 0.0 && before.rate < 1e-4);
    let after = gvmr_rate(&z4, 1.3).unwrap();
    assert_eq!((after.rate, after.aux("plateau")), (0.0, Some(1.0)));
    let pos = SpaceFamily::PosSimplex { rho: 0.3 };
    assert_eq!(gvmr_rate(&pos, 1.5).unwrap().rate, 0.0);
}

#[test]
fn curve_errors_and_gaps() {
    let pos = SpaceFamily::PosSimplex { rho: 0.5 };
    assert_eq!(rate_curve(&pos, BoundKind::Gv, RhoMode::Fixed, &[]), Err(BoundsError::EmptyGrid));
    assert_eq!(rate_curve(&pos, BoundKind::Gv, RhoMode::Fixed, &[0.2, 0.1]), Err(BoundsError::UnsortedGrid));
    assert!(matches!(
        rate_curve(&pos, BoundKind::Lee, RhoMode::Fixed, &[0.1]),
        Err(BoundsError::NotApplicable { .. })
    ));
    let c = rate_curve(&pos, BoundKind::KolesnikKrachkovsky, RhoMode::Optimized, &[0.1, 0.5, 0.55]).unwrap();
    assert_eq!(c.samples.len(), 2);
    assert_eq!(c.gaps.len(), 1);
    assert_eq!(c.gaps[0].delta, 0.55);
}

#[test]
fn tiny_distance_falls_back_cleanly() {
    let fam = SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 };
    let t = ball_exponent(&fam, 1e-6).unwrap();
    let cap = capacity(&fam).unwrap();
    assert!(t > cap && t < cap + 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn binary_hypercube_is_classical(delta in 0.001f64..0.499) {
        let r = gv_rate(&SpaceFamily::Hypercube { q: 2 }, delta).unwrap();
        prop_assert!((r - (1.0 - h2(delta))).abs() < 1e-9);
    }

    #[test]
    fn ball_exponent_is_monotone(fi in 0usize..7, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let fam = families()[fi];
        let span = diameter(&fam);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let t1 = ball_exponent(&fam, lo * span).unwrap();
        let t2 = ball_exponent(&fam, hi * span).unwrap();
        prop_assert!(t2 >= t1 - 1e-9);
        let cap2 = 2.0 * capacity(&fam).unwrap();
        prop_assert!(t2 <= cap2 + 1e-9);
        if hi * span >= gv_delta_max(&fam).unwrap() {
            prop_assert_eq!(t2, cap2);
        }
    }

    #[test]
    fn mr_dominates_gv(q in 3u32..=5, frac in 0.0f64..1.0) {
        let fam = SpaceFamily::Hypercube { q };
        let d = frac * gv_delta_max(&fam).unwrap();
        prop_assert!(gvmr_rate(&fam, d).unwrap().rate >= gv_rate(&fam, d).unwrap() - 1e-9);
        let std2 = SpaceFamily::StdSimplex { rho: 2.0 };
        let d = frac * 1.5;
        prop_assert!(gvmr_rate(&std2, d).unwrap().rate >= gv_rate(&std2, d).unwrap() - 1e-9);
        let d = frac;
        prop_assert!(gvmr_rate_optimized_rho(d).unwrap().rate >= gv_rate_optimized_rho(d).unwrap().rate - 1e-9);
    }

    #[test]
    fn sphere_packing_sandwich(frac in 0.0f64..1.0) {
        let std2 = SpaceFamily::StdSimplex { rho: 2.0 };
        let d = 1.5 * frac;
        let sp = comparison_rate(BoundKind::SpherePacking, &std2, d).unwrap();
        prop_assert!(gv_rate(&std2, d).unwrap() <= sp + 1e-9);
        prop_assert!(gvmr_rate(&std2, d).unwrap().rate <= sp + 1e-9);
        let d = 2.0 * frac;
        let cw = comparison_rate(BoundKind::ConstantWeightGv, &std2, d).unwrap();
        prop_assert!(cw <= gvmr_rate(&std2, d).unwrap().rate + 1e-9);
    }
}
