//! Three independent counts of pairs at L1 distance s: brute force over both
//! spaces, the truncation DP, and the series coefficient.

use l1gv::family::SpaceKind;
use l1gv::oracle::{pair_histogram, space_size, DpCounter, Instance, PairSeries};

fn main() {
    for (kind, q) in [(SpaceKind::PosSimplex, 0), (SpaceKind::Hypercube, 3)] {
        let inst = if kind.is_hypercube() {
            Instance::hypercube(kind, q, 4)
        } else {
            Instance::simplex(kind, 7, 7, 3)
        };
        let brute = pair_histogram(&inst, 1 << 20).unwrap();
        let dp = DpCounter::for_instance(&inst, 64).table(&inst).unwrap();
        let series = PairSeries::new(kind, q, 7, 3, 0).unwrap().table(&inst).unwrap();
        println!("{kind:?} {:?}", inst.shape);
        for (s, b) in &brute.counts {
            println!("  s={s:<2} {b:>6} {:>6} {:>6}", dp.get(*s), series.get(*s));
        }
        let size = space_size(&inst.left());
        println!("  total {} = |S|^2 = {}", dp.total(), &size * &size);
    }
}
