//! Minimal critical point of a reduced denominator: closed form against the
//! generic Newton solver.

use l1gv::acsv::{solve_critical_point, CriticalProblem};
use l1gv::bounds::{ball_exponent, closed_form_point};
use l1gv::family::SpaceFamily;

fn main() {
    let fams = [
        SpaceFamily::StdSimplex { rho: 2.0 },
        SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 },
        SpaceFamily::HypercubeZeros { q: 4, tau: 0.3 },
    ];
    for fam in fams {
        let delta = 0.4;
        let p = CriticalProblem::new(fam.reduced_denominator(), fam.direction(delta)).unwrap();
        let newton = solve_critical_point(&p, None).unwrap();
        let closed = closed_form_point(&fam, delta).unwrap();
        println!("{fam:?} at delta = {delta}");
        println!("  closed form {closed:?}");
        println!("  newton      {:?}", newton.point);
        println!("  residuals   {:.1e} {:.1e}", newton.residual_h, newton.residual_prop);
        println!("  T~ = {:.12}  (newton rate {:.12})", ball_exponent(&fam, delta).unwrap(), newton.rate);
    }
}
