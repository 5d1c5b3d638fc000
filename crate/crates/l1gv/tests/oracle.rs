use std::collections::BTreeMap;

use l1gv::family::SpaceKind;
use l1gv::oracle::{
    count_pairs_bruteforce, count_pairs_dp, empirical_exponent, pair_histogram, space_size, total_ball, DpCounter,
    FeatureHistogram, Instance, OracleError, PairSeries, Space,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Members of a space, by the definition and nothing else.
fn members(kind: SpaceKind, q: u32, n: u32, r: u32, p: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match kind {
        SpaceKind::Hypercube | SpaceKind::HypercubeZeros => {
            let total = (q as u64).pow(n);
            for mut code in 0..total {
                let v: Vec<i64> = (0..n)
                    .map(|_| {
                        let d = code % q as u64;
                        code /= q as u64;
                        d as i64
                    })
                    .collect();
                if kind == SpaceKind::Hypercube || v.iter().filter(|&&x| x == 0).count() == p as usize {
                    out.push(v);
                }
            }
        }
        SpaceKind::InvSimplex => {
            fn rec(start: i64, n: i64, left: u32, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
                if left == 0 {
                    out.push(cur.clone());
                    return;
                }
                for u in start..=n {
                    cur.push(u);
                    rec(u + 1, n, left - 1, cur, out);
                    cur.pop();
                }
            }
            rec(1, n as i64, r, &mut Vec::new(), &mut out);
        }
        _ => {
            fn rec(rest: i64, left: u32, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
                if left == 0 {
                    if rest == 0 {
                        out.push(cur.clone());
                    }
                    return;
                }
                for u in 0..=rest {
                    cur.push(u);
                    rec(rest - u, left - 1, cur, out);
                    cur.pop();
                }
            }
            rec(n as i64, r, &mut Vec::new(), &mut out);
            out.retain(|v| match kind {
                SpaceKind::StdSimplex => true,
                SpaceKind::StdSimplexZeros => v.iter().filter(|&&x| x == 0).count() == p as usize,
                SpaceKind::PosSimplex => v.iter().all(|&x| x >= 1),
                SpaceKind::PosSimplexOnes => v.iter().all(|&x| x >= 1) && v.iter().filter(|&&x| x == 1).count() == p as usize,
                _ => unreachable!(),
            });
        }
    }
    out
}

fn naive_counts(inst: &Instance) -> BTreeMap<u32, BigInt> {
    let sh = inst.shape;
    let a = members(inst.kind, inst.q, sh.n1, sh.r, sh.p1);
    let b = members(inst.kind, inst.q, sh.n2, sh.r, sh.p2);
    let mut out = BTreeMap::new();
    for u in &a {
        for v in &b {
            let s: i64 = u.iter().zip(v).map(|(x, y)| (x - y).abs()).sum();
            *out.entry(s as u32).or_insert_with(|| BigInt::from(0)) += 1;
        }
    }
    out
}

fn simplex_instance() -> impl Strategy<Value = Instance> {
    (
        prop::sample::select(vec![
            SpaceKind::StdSimplex,
            SpaceKind::StdSimplexZeros,
            SpaceKind::PosSimplex,
            SpaceKind::PosSimplexOnes,
            SpaceKind::InvSimplex,
        ]),
        1u32..=6,
        1u32..=6,
        1u32..=3,
        0u32..=3,
        0u32..=3,
    )
        .prop_map(|(kind, n1, n2, r, p1, p2)| {
            let (p1, p2) = if kind.is_constrained() { (p1.min(r), p2.min(r)) } else { (0, 0) };
            let n2 = if kind == SpaceKind::InvSimplex { n1 } else { n2 };
            Instance::simplex(kind, n1, n2, r).with_p(p1, p2)
        })
}

fn hypercube_instance() -> impl Strategy<Value = Instance> {
    (prop::bool::ANY, 2u32..=4, 1u32..=4, 0u32..=4, 0u32..=4).prop_map(|(zeros, q, n, p1, p2)| {
        if zeros {
            Instance::hypercube(SpaceKind::HypercubeZeros, q, n).with_p(p1.min(n), p2.min(n))
        } else {
            Instance::hypercube(SpaceKind::Hypercube, q, n)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_naive_pairs_simplex(inst in simplex_instance()) {
        let naive = naive_counts(&inst);
        let mut dp = DpCounter::for_instance(&inst, 40);
        let table = dp.table(&inst).unwrap();
        for s in 0..=inst.max_distance() + 1 {
            prop_assert_eq!(table.get(s), naive.get(&s).cloned().unwrap_or_default(), "s = {}", s);
        }
    }

    #[test]
    fn dp_matches_naive_pairs_hypercube(inst in hypercube_instance()) {
        let naive = naive_counts(&inst);
        let table = DpCounter::for_instance(&inst, 40).table(&inst).unwrap();
        for s in 0..=inst.max_distance() {
            prop_assert_eq!(table.get(s), naive.get(&s).cloned().unwrap_or_default());
        }
    }

    #[test]
    fn series_matches_brute_force(inst in simplex_instance().prop_filter("rational", |i| i.kind != SpaceKind::InvSimplex)) {
        let brute = pair_histogram(&inst, 1_000_000).unwrap();
        let sh = inst.shape;
        let series = PairSeries::new(inst.kind, 0, sh.n1.max(sh.n2), sh.r, sh.p1.max(sh.p2)).unwrap();
        prop_assert_eq!(series.table(&inst).unwrap(), brute);
    }

    #[test]
    fn pair_counts_are_symmetric(inst in simplex_instance()) {
        let sh = inst.shape;
        let mut swapped = Instance::simplex(inst.kind, sh.n2, sh.n1, sh.r).with_p(sh.p2, sh.p1);
        swapped.q = inst.q;
        let mut dp = DpCounter::for_instance(&inst, 40);
        for s in 0..=inst.max_distance() {
            prop_assert_eq!(dp.count(&inst, s).unwrap(), dp.count(&swapped, s).unwrap());
        }
    }

    #[test]
    fn histogram_sums_to_product_of_sizes(inst in hypercube_instance()) {
        let t = pair_histogram(&inst, 1_000_000).unwrap();
        prop_assert_eq!(t.total(), space_size(&inst.left()) * space_size(&inst.right()));
    }
}

#[test]
fn space_sizes_match_closed_forms() {
    fn c(n: i64, k: i64) -> i64 {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for n in 1..=9u32 {
        for r in 1..=5u32 {
            let (ni, ri) = (n as i64, r as i64);
            let std = Space::simplex(SpaceKind::StdSimplex, n, r, 0);
            assert_eq!(space_size(&std), BigInt::from(c(ni + ri - 1, ri - 1)));
            let pos = Space::simplex(SpaceKind::PosSimplex, n, r, 0);
            assert_eq!(space_size(&pos), BigInt::from(c(ni - 1, ri - 1)));
            let inv = Space::simplex(SpaceKind::InvSimplex, n, r, 0);
            assert_eq!(space_size(&inv), BigInt::from(c(ni, ri)));
            for p in 0..=r {
                let pi = p as i64;
                let z = Space::simplex(SpaceKind::StdSimplexZeros, n, r, p);
                let want = members(SpaceKind::StdSimplexZeros, 0, n, r, p).len() as i64;
                assert_eq!(space_size(&z), BigInt::from(want));
                if pi < ri {
                    assert_eq!(want, c(ri, pi) * c(ni - 1, ri - pi - 1));
                }
                let o = Space::simplex(SpaceKind::PosSimplexOnes, n, r, p);
                assert_eq!(space_size(&o), BigInt::from(members(SpaceKind::PosSimplexOnes, 0, n, r, p).len() as i64));
            }
        }
    }
    for q in 2..=4u32 {
        for n in 1..=5u32 {
            assert_eq!(space_size(&Space::hypercube(SpaceKind::Hypercube, q, n, 0)), BigInt::from(q).pow(n));
            for p in 0..=n {
                let want = c(n as i64, p as i64) * (q as i64 - 1).pow(n - p);
                assert_eq!(space_size(&Space::hypercube(SpaceKind::HypercubeZeros, q, n, p)), BigInt::from(want));
            }
        }
    }
}

#[test]
fn small_frozen_counts() {
    // (2,0),(1,1),(0,2): four ordered pairs at distance 2
    let i = Instance::simplex(SpaceKind::StdSimplex, 2, 2, 2);
    assert_eq!(count_pairs_bruteforce(&i, 2, 1000).unwrap(), BigInt::from(4));
    assert_eq!(count_pairs_dp(&i, 2, 40).unwrap(), BigInt::from(4));
    // binary words of length 3 at Hamming distance 1: 8·3
    let h = Instance::hypercube(SpaceKind::Hypercube, 2, 3);
    assert_eq!(count_pairs_dp(&h, 1, 40).unwrap(), BigInt::from(24));
    // subsets {a<b} of [4] at distance 0: six
    let v = Instance::simplex(SpaceKind::InvSimplex, 4, 4, 2);
    assert_eq!(count_pairs_dp(&v, 0, 40).unwrap(), BigInt::from(6));
}

#[test]
fn feature_histogram_splits_by_constraint_count() {
    for (kind, q, n, r) in [(SpaceKind::HypercubeZeros, 3, 4, 4), (SpaceKind::StdSimplexZeros, 0, 5, 3), (SpaceKind::PosSimplexOnes, 0, 7, 3)] {
        let fh = FeatureHistogram::build(kind, q, n, n, r, 1_000_000).unwrap();
        let pmax = if kind.is_hypercube() { n } else { r };
        for p1 in 0..=pmax {
            for p2 in 0..=pmax {
                let inst = if kind.is_hypercube() {
                    Instance::hypercube(kind, q, n).with_p(p1, p2)
                } else {
                    Instance::simplex(kind, n, n, r).with_p(p1, p2)
                };
                assert_eq!(fh.table(p1, p2), pair_histogram(&inst, 1_000_000).unwrap(), "{inst:?}");
            }
        }
    }
}

#[test]
fn layered_totals_match_dp_cumulative() {
    let cases = [
        Instance::simplex(SpaceKind::StdSimplex, 7, 7, 3),
        Instance::simplex(SpaceKind::PosSimplex, 8, 8, 3),
        Instance::simplex(SpaceKind::StdSimplexZeros, 7, 7, 4).with_p(2, 2),
        Instance::simplex(SpaceKind::PosSimplexOnes, 9, 9, 4).with_p(1, 1),
        Instance::simplex(SpaceKind::InvSimplex, 7, 7, 3),
        Instance::hypercube(SpaceKind::Hypercube, 4, 5),
        Instance::hypercube(SpaceKind::HypercubeZeros, 3, 6).with_p(2, 2),
    ];
    for inst in cases {
        let table = DpCounter::for_instance(&inst, 40).table(&inst).unwrap();
        for d in 0..=inst.max_distance() {
            assert_eq!(total_ball(&inst, d, 40).unwrap(), table.cumulative(d), "{inst:?} d={d}");
        }
    }
}

#[test]
fn inverted_and_positive_totals_differ_at_finite_n() {
    // different space sizes, C(n,r) vs C(n-1,r-1), so the full balls differ
    let inv = Instance::simplex(SpaceKind::InvSimplex, 8, 8, 4);
    let pos = Instance::simplex(SpaceKind::PosSimplex, 8, 8, 4);
    assert_eq!(total_ball(&inv, 32, 40).unwrap(), BigInt::from(70 * 70));
    assert_eq!(total_ball(&pos, 16, 40).unwrap(), BigInt::from(35 * 35));
}

#[test]
fn caps_are_enforced() {
    let big = Instance::hypercube(SpaceKind::Hypercube, 4, 8);
    assert!(matches!(pair_histogram(&big, 1000), Err(OracleError::EnumerationCap { .. })));
    let long = Instance::simplex(SpaceKind::StdSimplex, 50, 50, 3);
    assert!(matches!(count_pairs_dp(&long, 3, 40), Err(OracleError::DpCap { .. })));
    assert!(matches!(total_ball(&long, 3, 40), Err(OracleError::DpCap { .. })));
}

#[test]
fn empirical_exponent_is_finite_at_forty() {
    let inst = Instance::simplex(SpaceKind::StdSimplex, 40, 40, 80);
    let e = empirical_exponent(&inst, 20, 40).unwrap();
    assert!(e.is_finite() && e > 0.0);
}
