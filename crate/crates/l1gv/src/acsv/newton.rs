use nalgebra::{DMatrix, DVector};

use super::{residuals_of, AcsvError, CriticalProblem, CriticalSolution};
use crate::config::Tolerances;
use crate::poly::SparsePoly;

/// Seed values per coordinate; the grid is their Cartesian power.
const SEED_VALUES: [f64; 5] = [0.15, 0.5, 0.85, 1.5, 4.0];
const RATE_SEEDS: [f64; 4] = [0.25, 1.0, 2.5, 0.05];
const MAX_LOG: f64 = 60.0;

/// `A_j = z_j ∂H/∂z_j` and `B_jk = z_k ∂A_j/∂z_k`, both exact.
struct Derivatives {
    h: SparsePoly,
    a: Vec<SparsePoly>,
    b: Vec<Vec<SparsePoly>>,
}

impl Derivatives {
    fn new(h: &SparsePoly) -> Derivatives {
        let n = h.num_vars();
        let a: Vec<SparsePoly> = (0..n).map(|j| h.partial(j).expect("in range").shift(j)).collect();
        let b = a
            .iter()
            .map(|aj| (0..n).map(|k| aj.partial(k).expect("in range").shift(k)).collect())
            .collect();
        Derivatives { h: h.clone(), a, b }
    }
}

/// Residual vector and Jacobian of the square system. Unknowns are the
/// logs of the free coordinates and, when `free_rate` is set, the log of
/// that direction component (with its coordinate pinned to 1).
struct System<'a> {
    der: &'a Derivatives,
    direction: Vec<f64>,
    free_rate: Option<usize>,
}

impl System<'_> {
    fn dim(&self) -> usize {
        self.direction.len()
    }

    /// Maps unknowns to `(z, r)`.
    fn unpack(&self, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        match self.free_rate {
            None => (u.iter().map(|x| x.exp()).collect(), self.direction.clone()),
            Some(k) => {
                let mut z = Vec::with_capacity(n);
                let mut it = u.iter();
                for j in 0..n {
                    if j == k {
                        z.push(1.0);
                    } else {
                        z.push(it.next().unwrap().exp());
                    }
                }
                let mut r = self.direction.clone();
                r[k] = it.next().unwrap().exp();
                (z, r)
            }
        }
    }

    fn eval(&self, u: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.dim();
        let l = n - 1;
        let (z, r) = self.unpack(u);
        let a: Vec<f64> = self.der.a.iter().map(|p| p.eval_unchecked(&z)).collect();
        let b: Vec<Vec<f64>> = self.der.b.iter().map(|row| row.iter().map(|p| p.eval_unchecked(&z)).collect()).collect();
        let mut f = DVector::zeros(n);
        f[0] = self.der.h.eval_unchecked(&z);
        for j in 0..l {
            f[j + 1] = r[l] * a[j] - r[j] * a[l];
        }
        // columns: one per free coordinate, then the free rate
        let cols: Vec<usize> = (0..n).filter(|&k| Some(k) != self.free_rate).collect();
        let mut jac = DMatrix::zeros(n, n);
        for (c, &k) in cols.iter().enumerate() {
            jac[(0, c)] = a[k];
            for j in 0..l {
                jac[(j + 1, c)] = r[l] * b[j][k] - r[j] * b[l][k];
            }
        }
        if let Some(k) = self.free_rate {
            let c = n - 1;
            for j in 0..l {
                let d = if k == l {
                    a[j]
                } else if k == j {
                    -a[l]
                } else {
                    0.0
                };
                jac[(j + 1, c)] = d * r[k];
            }
        }
        (f, jac)
    }
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Damped Newton with backtracking on `‖F‖²`. Returns the final unknowns
/// and the max-norm residual.
fn newton(sys: &System<'_>, start: Vec<f64>, tol: &Tolerances) -> (Vec<f64>, f64) {
    let mut u = DVector::from_vec(start);
    let (mut f, mut jac) = sys.eval(u.as_slice());
    let mut res = max_abs(&f);
    for _ in 0..tol.max_newton_iters {
        if !res.is_finite() || res < tol.newton {
            break;
        }
        let Some(mut du) = jac.clone().lu().solve(&(-&f)) else { break };
        let step = du.amax();
        if !step.is_finite() {
            break;
        }
        if step > 1.0 {
            du /= step;
        }
        let merit = f.norm_squared();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = (&u + &du * t).map(|x| x.clamp(-MAX_LOG, MAX_LOG));
            let (fc, jc) = sys.eval(cand.as_slice());
            let mc = fc.norm_squared();
            if mc.is_finite() && mc < (1.0 - 1e-4 * t) * merit {
                u = cand;
                f = fc;
                jac = jc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
        res = max_abs(&f);
    }
    (u.as_slice().to_vec(), res)
}

/// Newton ran into the log-coordinate clamp: a point at 0 or infinity.
fn at_clamp(u: &[f64]) -> bool {
    u.iter().any(|x| x.abs() > MAX_LOG - 1.0)
}

/// `H(t z)` keeps the sign of `H(0)` for `t ∈ [0, 1)`: no singularity lies
/// strictly between the origin and `z` along the ray.
fn ray_minimal(h: &SparsePoly, z: &[f64]) -> bool {
    let h0 = h.constant_term() as f64;
    const STEPS: usize = 400;
    (1..STEPS).all(|i| {
        let t = i as f64 / STEPS as f64;
        let p: Vec<f64> = z.iter().map(|x| x * t).collect();
        h.eval_unchecked(&p) * h0 > 0.0
    })
}

fn seed_grid(dim: usize) -> impl Iterator<Item = Vec<f64>> {
    let total = SEED_VALUES.len().pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0.0; dim];
        for slot in v.iter_mut().rev() {
            *slot = SEED_VALUES[idx % SEED_VALUES.len()];
            idx /= SEED_VALUES.len();
        }
        v
    })
}

/// The minimal positive critical point of `problem`, with default tolerances.
pub fn solve_critical_point(problem: &CriticalProblem, initial: Option<&[f64]>) -> Result<CriticalSolution, AcsvError> {
    solve_critical_point_with(problem, initial, &Tolerances::default())
}

/// Tries `initial` first, then the deterministic seed grid; the first
/// converged point that is ray-minimal and passes [`CriticalSolution::verify`] wins.
pub fn solve_critical_point_with(
    problem: &CriticalProblem,
    initial: Option<&[f64]>,
    tol: &Tolerances,
) -> Result<CriticalSolution, AcsvError> {
    let der = Derivatives::new(&problem.h);
    let sys = System { der: &der, direction: problem.direction.clone(), free_rate: None };
    let mut best = f64::INFINITY;
    let seeds = initial.map(|s| s.to_vec()).into_iter().chain(seed_grid(problem.dim()));
    for seed in seeds {
        if seed.iter().any(|&x| !(x > 0.0)) {
            continue;
        }
        let (u, res) = newton(&sys, seed.iter().map(|x| x.ln()).collect(), tol);
        best = best.min(res);
        if res >= tol.newton.max(tol.accept * 1e-2) || at_clamp(&u) {
            continue;
        }
        let z: Vec<f64> = u.iter().map(|x| x.exp()).collect();
        if !ray_minimal(&problem.h, &z) {
            log::debug!("rejecting non-minimal critical point {z:?}");
            continue;
        }
        if let Ok(sol) = CriticalSolution::verify(problem, z, tol) {
            return Ok(sol);
        }
    }
    Err(AcsvError::NoConvergence { best_residual: best })
}

/// The direction component `r_k` at which `z_k* = 1`, i.e. where `Φ` stops
/// growing in `r_k`, together with the critical point there. The other
/// components of `direction` are kept; the value at index `k` is ignored.
pub fn plateau_direction(h: &SparsePoly, direction: &[f64], k: usize) -> Result<(f64, CriticalSolution), AcsvError> {
    plateau_direction_with(h, direction, k, None, &Tolerances::default())
}

/// [`plateau_direction`] with an optional `(r_k, z)` seed and explicit tolerances.
pub fn plateau_direction_with(
    h: &SparsePoly,
    direction: &[f64],
    k: usize,
    initial: Option<(f64, &[f64])>,
    tol: &Tolerances,
) -> Result<(f64, CriticalSolution), AcsvError> {
    let mut dir = direction.to_vec();
    if k >= dir.len() {
        return Err(crate::poly::PolyError::IndexOutOfRange { index: k, num_vars: dir.len() }.into());
    }
    dir[k] = 1.0;
    // validates everything except the free component
    let _ = CriticalProblem::new(h.clone(), dir.clone())?;
    let der = Derivatives::new(h);
    let sys = System { der: &der, direction: dir.clone(), free_rate: Some(k) };
    let n = dir.len();
    let pack = |z: &[f64], rk: f64| -> Vec<f64> {
        let mut u: Vec<f64> = (0..n).filter(|&j| j != k).map(|j| z[j].ln()).collect();
        u.push(rk.ln());
        u
    };
    let mut seeds: Vec<Vec<f64>> = Vec::new();
    if let Some((rk, z)) = initial {
        seeds.push(pack(z, rk));
    }
    for &rk in &RATE_SEEDS {
        for s in seed_grid(n - 1) {
            let mut z = s.clone();
            z.insert(k, 1.0);
            seeds.push(pack(&z, rk));
        }
    }
    let mut best = f64::INFINITY;
    for seed in seeds {
        let (u, res) = newton(&sys, seed, tol);
        best = best.min(res);
        if res >= tol.newton.max(tol.accept * 1e-2) {
            continue;
        }
        if at_clamp(&u) {
            continue;
        }
        let (z, r) = sys.unpack(&u);
        // r_k → 0 solves the system degenerately
        if r[k] < 1e-9 || !ray_minimal(h, &z) {
            continue;
        }
        let problem = CriticalProblem::new(h.clone(), r.clone())?;
        let (rh, rp) = residuals_of(h, &r, &z);
        log::debug!("plateau candidate r = {r:?}, residuals {rh:e} {rp:e}");
        if let Ok(sol) = CriticalSolution::verify(&problem, z, tol) {
            return Ok((r[k], sol));
        }
    }
    Err(AcsvError::NoConvergence { best_residual: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::one_like;

    fn binomial() -> SparsePoly {
        let v = SparsePoly::vars(&["z1", "z2"]);
        &(&one_like(&v[0]) - &v[0]) - &(&v[0] * &v[1])
    }

    #[test]
    fn binomial_critical_point() {
        let p = CriticalProblem::new(binomial(), vec![1.0, 0.25]).unwrap();
        let s = solve_critical_point(&p, None).unwrap();
        assert!((s.point[0] - 0.75).abs() < 1e-10);
        assert!((s.point[1] - 1.0 / 3.0).abs() < 1e-10);
        assert!((s.rate - crate::entropy::h2(0.25)).abs() < 1e-10);
    }

    #[test]
    fn binomial_plateau() {
        let (r, s) = plateau_direction(&binomial(), &[1.0, 0.3], 1).unwrap();
        assert!((r - 0.5).abs() < 1e-10);
        assert!((s.point[1] - 1.0).abs() < 1e-15);
    }
}
