use l1gv::poly::{one_like, series_coeffs, series_coeffs_box, SparsePoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn poly3() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6)
        .prop_map(|terms| SparsePoly::from_terms(3, terms))
}

fn point3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, 3)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn ring_ops_commute_with_eval(a in poly3(), b in poly3(), c in poly3(), z in point3()) {
        let ev = |p: &SparsePoly| p.eval(&z).unwrap();
        prop_assert!(close(ev(&(&a + &b)), ev(&a) + ev(&b)));
        prop_assert!(close(ev(&(&a - &b)), ev(&a) - ev(&b)));
        prop_assert!(close(ev(&(&a * &b)), ev(&a) * ev(&b)));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
    }

    #[test]
    fn product_rule(a in poly3(), b in poly3(), i in 0usize..3) {
        let lhs = (&a * &b).partial(i).unwrap();
        let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_matches_finite_difference(a in poly3(), z in point3(), i in 0usize..3) {
        let h = 1e-6;
        let mut zp = z.clone();
        let mut zm = z.clone();
        zp[i] += h;
        zm[i] -= h;
        let fd = (a.eval(&zp).unwrap() - a.eval(&zm).unwrap()) / (2.0 * h);
        let exact = a.partial(i).unwrap().eval(&z).unwrap();
        prop_assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()));
    }

    #[test]
    fn exact_division_round_trips(a in poly3(), b in poly3()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn identify_is_substitution(a in poly3(), z in point3()) {
        let merged = a.identify(0, 2).unwrap();
        let full = [z[0], z[1], z[0]];
        prop_assert!(close(merged.eval(&z[..2]).unwrap(), a.eval(&full).unwrap()));
    }

    #[test]
    fn swap_is_an_involution(a in poly3(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(a.swap_vars(i, j).swap_vars(i, j), a);
    }
}

#[test]
fn two_variable_geometric_series_is_binomial() {
    let v = SparsePoly::vars(&["x", "y"]);
    let h = &(&one_like(&v[0]) - &v[0]) - &v[1];
    let t = series_coeffs(&one_like(&h), &h, 12).unwrap();
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            assert_eq!(t.get(&[a, b]).unwrap(), BigInt::from(binom((a + b) as u64, a as u64)));
        }
    }
    assert!(t.get(&[7, 6]).is_none());
}

#[test]
fn box_and_total_degree_agree() {
    // 1/(1 - x - xy - y z)
    let v = SparsePoly::vars(&["x", "y", "z"]);
    let h = &(&(&one_like(&v[0]) - &v[0]) - &(&v[0] * &v[1])) - &(&v[1] * &v[2]);
    let g = one_like(&h);
    let t = series_coeffs(&g, &h, 9).unwrap();
    let b = series_coeffs_box(&g, &h, &[3, 3, 3]).unwrap();
    for i in 0..=3 {
        for j in 0..=3 {
            for k in 0..=3 {
                assert_eq!(b.get(&[i, j, k]).unwrap(), &t.get(&[i, j, k]).unwrap());
            }
        }
    }
}

#[test]
fn compositions_from_positive_parts() {
    // Σ C(n-1, r-1) x^n y^r = 1/(1 - x - x y) shifted: coefficient of x^n y^r in
    // x y / (1 - x - x y) counts compositions of n into r positive parts
    let v = SparsePoly::vars(&["x", "y"]);
    let h = &(&one_like(&v[0]) - &v[0]) - &(&v[0] * &v[1]);
    let g = &v[0] * &v[1];
    let b = series_coeffs_box(&g, &h, &[10, 10]).unwrap();
    for n in 1..=10u32 {
        for r in 1..=n {
            assert_eq!(b.get(&[n, r]).unwrap(), &BigInt::from(binom((n - 1) as u64, (r - 1) as u64)));
        }
    }
}
