//! GV, GV-MR and comparison curves for the standard simplex at rho = 2.

use l1gv::bounds::{rate_curve, BoundKind, RhoMode};
use l1gv::family::SpaceFamily;

fn main() {
    let fam = SpaceFamily::StdSimplex { rho: 2.0 };
    let grid: Vec<f64> = (0..=10).map(|i| 0.2 * i as f64).collect();
    let kinds = [BoundKind::SpherePacking, BoundKind::GvMr, BoundKind::Gv, BoundKind::ConstantWeightGv];
    let curves: Vec<_> = kinds.iter().map(|&k| rate_curve(&fam, k, RhoMode::Fixed, &grid).unwrap()).collect();
    print!("{:>6}", "delta");
    for k in kinds {
        print!("{:>10}", k.cli_name());
    }
    println!();
    for (i, d) in grid.iter().enumerate() {
        print!("{d:>6.2}");
        for c in &curves {
            print!("{:>10.5}", c.samples[i].rate);
        }
        println!();
    }
}
