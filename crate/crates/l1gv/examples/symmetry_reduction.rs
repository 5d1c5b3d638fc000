//! Collapsing the symmetric pair (x1, x2) of a pair generating function
//! denominator into one variable.

use l1gv::acsv::{reduce_symmetric, reduce_symmetric_dividing, reduce_symmetric_joint, PairHypothesis};
use l1gv::family::SpaceFamily;
use l1gv::poly::{one_like, SparsePoly};

fn main() {
    let fam = SpaceFamily::PosSimplex { rho: 0.5 };
    let (_, h) = fam.pair_generating_function().unwrap();
    println!("H          = {h}");
    // a plain identification fails: x1 and x2 enter H with different exponents
    println!("equal exponents: {:?}", reduce_symmetric(&h, (0, 1), PairHypothesis::EqualExponents).err());

    let v = SparsePoly::vars(&["x", "y", "z"]);
    let spurious = &one_like(&v[0]) - &(&v[0] * &v[2]);
    let r = reduce_symmetric_dividing(&h, (0, 1), PairHypothesis::SwapInvariant, &spurious).unwrap();
    println!("reduced    = {r}");
    println!("expected   = {}", fam.reduced_denominator());

    // constrained spaces swap (x1, x2) together with (w1, w2)
    let fam = SpaceFamily::StdSimplexZeros { rho: 1.0, tau: 0.5 };
    let (_, h) = fam.pair_generating_function().unwrap();
    let v = SparsePoly::vars(&["x", "y", "z", "w"]);
    let spurious = &one_like(&v[0]) - &(&v[0] * &v[2]);
    let r = reduce_symmetric_joint(&h, &[(0, 1), (4, 5)], Some(&spurious)).unwrap();
    println!("\nzeros      = {r}");
    println!("matches    = {}", r == fam.reduced_denominator());
}
