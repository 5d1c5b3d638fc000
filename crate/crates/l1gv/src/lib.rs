//! Gilbert–Varshamov type lower bounds for codes in the L1 metric over
//! simplices and hypercubes, computed from multivariate generating functions
//! and checked against exact counts.
//!
//! Layering, bottom up:
//!
//! - [`poly`]: sparse integer polynomials and truncated power series.
//! - [`family`]: the seven space families, their pair generating functions
//!   and reduced denominators.
//! - [`oracle`]: brute force, DP and series pair counts at small `n`.
//! - [`roots`]: univariate root isolation used by the closed forms.
//! - [`acsv`]: smooth critical points, symmetric reduction, plateau search.
//! - [`bounds`]: capacities, ball exponents, GV / GV-MR / comparison curves.
//! - [`cli`]: the `l1gv` binary.
//!
//! ```
//! use l1gv::bounds::gv_rate;
//! use l1gv::family::SpaceFamily;
//!
//! let r = gv_rate(&SpaceFamily::Hypercube { q: 2 }, 0.25).unwrap();
//! assert!((r - (1.0 - l1gv::entropy::h2(0.25))).abs() < 1e-12);
//! ```

pub mod config;
pub mod entropy;
pub mod family;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod acsv;
pub mod bounds;
pub mod cli;
