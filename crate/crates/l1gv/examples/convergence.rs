//! Exact finite-n ball sizes approaching the asymptotic exponent.

use l1gv::bounds::ball_exponent;
use l1gv::family::SpaceFamily;
use l1gv::oracle::{empirical_exponent, Instance};

fn main() {
    let fam = SpaceFamily::Hypercube { q: 4 };
    let delta = 0.75;
    let t = ball_exponent(&fam, delta).unwrap();
    println!("T~ = {t:.6}");
    for n in [5, 10, 20, 40, 80, 160] {
        let inst = Instance::of_family(&fam, n);
        let e = empirical_exponent(&inst, (delta * n as f64) as u32, 200).unwrap();
        println!("n = {n:>3}: log2|T|/n = {e:.6}  gap {:.4}", t - e);
    }
}
