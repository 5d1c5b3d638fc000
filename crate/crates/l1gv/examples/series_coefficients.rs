//! Reads pair counts straight off the power series of a pair generating
//! function and compares them with the DP.

use l1gv::family::{SpaceFamily, SpaceKind};
use l1gv::oracle::{DpCounter, Instance, PairSeries};
use l1gv::poly::series_coeffs_box;

fn main() {
    let fam = SpaceFamily::StdSimplex { rho: 1.0 };
    let (g, h) = fam.pair_generating_function().expect("standard simplex has a pair GF");
    println!("G = {g}");
    println!("H = {h}");

    let t = series_coeffs_box(&g, &h, &[3, 3, 2, 6]).unwrap();
    println!("[x1^2 x2^2 y^2 z^2] = {}", t.get(&[2, 2, 2, 2]).unwrap());

    let series = PairSeries::new(SpaceKind::StdSimplex, 0, 6, 3, 0).unwrap();
    let mut dp = DpCounter::new(SpaceKind::StdSimplex, 0, 64);
    let inst = Instance::simplex(SpaceKind::StdSimplex, 5, 4, 3);
    println!("\n  s  series      dp");
    for s in 0..=inst.max_distance() {
        let a = series.count(&inst, s).unwrap();
        let b = dp.count(&inst, s).unwrap();
        println!("{s:>3} {a:>7} {b:>7}");
    }
}
