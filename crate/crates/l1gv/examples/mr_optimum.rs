//! The extra parameter of the GV-MR bound: sweep tau by hand and compare the
//! best value with the coupled-coordinate optimum.

use l1gv::bounds::{gv_rate, gvmr_rate, gvmr_rate_optimized_rho};
use l1gv::family::SpaceFamily;

fn main() {
    let (rho, delta) = (2.0, 0.5);
    let mr = gvmr_rate(&SpaceFamily::StdSimplex { rho }, delta).unwrap();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 1..200 {
        let tau = 1.0 + i as f64 / 200.0;
        let r = gv_rate(&SpaceFamily::StdSimplexZeros { rho, tau }, delta).unwrap();
        if r > best.1 {
            best = (tau, r);
        }
    }
    println!("sweep:   tau = {:.3}, rate = {:.6}", best.0, best.1);
    println!("optimum: tau = {:.6}, rate = {:.6}", mr.tau, mr.rate);
    println!("w_cap = {:.10}, w_ball = {:.10}", mr.aux("w_cap").unwrap(), mr.aux("w_ball").unwrap());

    println!("\npositive simplex, rho optimized per delta");
    for delta in [0.1, 0.3, 0.5, 1.0, 1.5] {
        let o = gvmr_rate_optimized_rho(delta).unwrap();
        println!("  delta {delta:.1}: rho {:.6} tau {:.6} rate {:.6}", o.rho, o.tau, o.rate);
    }
}
