//! Where the ball exponent saturates: the distance at which the critical
//! coordinate of the distance variable reaches 1.

use l1gv::acsv::plateau_direction;
use l1gv::bounds::{ball_exponent, capacity, gv_delta_max};
use l1gv::family::SpaceFamily;

fn main() {
    let fams = [
        SpaceFamily::StdSimplex { rho: 2.0 },
        SpaceFamily::StdSimplexZeros { rho: 2.0, tau: 1.4 },
        SpaceFamily::PosSimplex { rho: 0.3 },
        SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 },
        SpaceFamily::Hypercube { q: 4 },
        SpaceFamily::HypercubeZeros { q: 4, tau: 0.3 },
    ];
    println!("{:<48} {:>12} {:>12} {:>10}", "family", "delta_max", "solver", "T~/2Cap");
    for fam in fams {
        let k = if fam.kind().is_hypercube() { 1 } else { 2 };
        let dm = gv_delta_max(&fam).unwrap();
        let (d, _) = plateau_direction(&fam.reduced_denominator(), &fam.direction(dm / 2.0), k).unwrap();
        let ratio = ball_exponent(&fam, dm).unwrap() / (2.0 * capacity(&fam).unwrap());
        println!("{:<48} {dm:>12.9} {d:>12.9} {ratio:>10.6}", format!("{fam:?}"));
    }
}
