use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use super::format::fmt_g17;
use super::{usage, CliError, CriticalArgs, CurveConfig, OutputFormat, ValidateArgs};
use crate::acsv::{rate_exponent, solve_critical_point_with, CriticalProblem};
use crate::bounds::{self, rate_curve, RhoMode};
use crate::family::{scaled_floor, SpaceKind};
use crate::oracle::{pair_histogram, space_size, total_ball, CountTable, DpCounter, Instance, OracleError, PairSeries};

pub const CSV_HEADER: &str = "space,params,bound,delta,rate,aux";

/// All requested curves, as CSV or JSON. Fails only when no grid point of
/// any bound could be evaluated.
pub fn cmd_curve(cfg: &CurveConfig, format: OutputFormat) -> Result<String, CliError> {
    let mut curves = Vec::with_capacity(cfg.bounds.len());
    for &b in &cfg.bounds {
        let c = rate_curve(&cfg.family, b, cfg.mode, &cfg.grid).map_err(|e| CliError::Numerical(e.to_string()))?;
        if !c.gaps.is_empty() {
            log::info!("{}: {} of {} grid points undefined", b.cli_name(), c.gaps.len(), cfg.grid.len());
        }
        curves.push(c);
    }
    if curves.iter().all(|c| c.samples.is_empty()) {
        let why = curves.iter().flat_map(|c| c.gaps.first()).map(|g| g.reason.clone()).next().unwrap_or_default();
        return Err(CliError::Numerical(format!("no grid point could be evaluated ({why})")));
    }
    if format == OutputFormat::Json {
        return Ok(serde_json::to_string_pretty(&curves).expect("serializable") + "\n");
    }
    let space = cfg.family.kind().cli_name();
    let params = match cfg.mode {
        RhoMode::Fixed => cfg.family.params_string(),
        RhoMode::Optimized => "rho=opt".to_string(),
    };
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in &curves {
        for s in &c.samples {
            let aux: Vec<String> = s.aux.iter().map(|(k, v)| format!("{k}={}", fmt_g17(*v))).collect();
            let _ = writeln!(
                out,
                "{space},{params},{},{},{},{}",
                c.bound.cli_name(),
                fmt_g17(s.delta),
                fmt_g17(s.rate),
                aux.join(";")
            );
        }
    }
    Ok(out)
}

/// Critical point coordinates, named as in the reduced system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedPoint {
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
}

impl NamedPoint {
    fn new(labels: &[&str], p: &[f64]) -> NamedPoint {
        let get = |name: &str| labels.iter().position(|l| *l == name).map(|i| p[i]);
        NamedPoint { x: p[0], y: get("y"), z: get("z"), w: get("w") }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalReport {
    pub space: String,
    pub params: String,
    pub delta: f64,
    /// `analytic` (δ = 0), `plateau` (past the GV δ_max) or `interior`.
    pub branch: &'static str,
    /// `closed_form` or `newton`.
    pub source: &'static str,
    pub point: Option<NamedPoint>,
    pub rate: f64,
    #[serde(rename = "residual_H")]
    pub residual_h: Option<f64>,
    pub residual_prop: Option<f64>,
    /// Max componentwise difference between closed form and Newton.
    pub agreement: Option<f64>,
}

pub fn cmd_critical(args: &CriticalArgs) -> Result<CriticalReport, CliError> {
    let family = args.family.family(false)?;
    let tol = args.tol.tolerances()?;
    let delta = args.delta;
    let hi = bounds::diameter(&family);
    if !(delta.is_finite() && (0.0..=hi).contains(&delta)) {
        return Err(usage(format!("--delta must lie in [0, {hi}]")));
    }
    let num = |e: bounds::BoundsError| CliError::Numerical(e.to_string());
    let cap = bounds::capacity(&family).map_err(num)?;
    let mut report = CriticalReport {
        space: family.kind().cli_name().to_string(),
        params: family.params_string(),
        delta,
        branch: "analytic",
        source: "closed_form",
        point: None,
        rate: cap,
        residual_h: None,
        residual_prop: None,
        agreement: None,
    };
    if delta == 0.0 {
        return Ok(report);
    }
    let dir = family.direction(delta);
    let problem = CriticalProblem::new(family.reduced_denominator(), dir.clone()).expect("well-formed reduced system");
    let closed = bounds::closed_form_point_with(&family, delta, &tol);
    let past_plateau = match &closed {
        Ok(p) if family.kind().is_constrained() && !family.kind().is_hypercube() => p[2] >= 1.0,
        _ => delta >= bounds::gv_delta_max(&family).map_err(num)?,
    };
    if past_plateau {
        report.branch = "plateau";
        report.rate = 2.0 * cap;
        return Ok(report);
    }
    report.branch = "interior";
    let newton = solve_critical_point_with(&problem, None, &tol);
    if let Err(e) = &newton {
        log::warn!("newton: {e}");
    }
    let closed = closed.ok().filter(|p| {
        let (rh, rp) = problem.residuals(p);
        let ok = rh < tol.accept && rp < tol.accept;
        if !ok {
            log::warn!("closed-form point rejected: residuals {rh:e}, {rp:e}");
        }
        ok
    });
    let labels = family.reduced_labels();
    let (point, source) = match (&closed, &newton) {
        (Some(p), _) => (p.clone(), "closed_form"),
        (None, Ok(s)) => (s.point.clone(), "newton"),
        (None, Err(e)) => return Err(CliError::Numerical(format!("no critical point: {e}"))),
    };
    let (rh, rp) = problem.residuals(&point);
    report.source = source;
    report.rate = rate_exponent(&point, &dir);
    report.point = Some(NamedPoint::new(labels, &point));
    report.residual_h = Some(rh);
    report.residual_prop = Some(rp);
    if let (Some(c), Ok(n)) = (&closed, &newton) {
        report.agreement = Some(c.iter().zip(&n.point).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: u32,
    pub r: u32,
    pub p: u32,
    pub s: u32,
    pub brute: Option<String>,
    pub dp: Option<String>,
    pub series: Option<String>,
    pub ok: bool,
}

/// `Σ_s N` against `|S|²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TotalRow {
    pub n: u32,
    pub sum: String,
    pub expected: String,
    pub ok: bool,
}

/// Inverted vs positive simplex total balls at the same `(n, r, d)`;
/// informational.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallRow {
    pub n: u32,
    pub r: u32,
    pub d: u32,
    pub inverted: String,
    pub positive: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidateReport {
    pub space: String,
    pub rows: Vec<CountRow>,
    pub totals: Vec<TotalRow>,
    pub ball_rows: Vec<BallRow>,
    pub skipped: Vec<String>,
    pub mismatches: usize,
    /// Largest `n` whose rows all agree across at least two sources.
    pub max_n_validated: Option<u32>,
}

fn opt_str(x: &Option<BigInt>) -> Option<String> {
    x.as_ref().map(|v| v.to_string())
}

/// Instances at size `n`: `r = ⌊ρn⌋` with `--rho`, else every `r ≤ --r`
/// (default `n`); likewise `p` from `--tau` or every `p ≤ --p`.
fn instances_at(args: &ValidateArgs, kind: SpaceKind, n: u32) -> Result<Vec<Instance>, CliError> {
    let fam = &args.family;
    let p_values = |limit: u32| -> Vec<u32> {
        if !kind.is_constrained() {
            return vec![0];
        }
        match fam.tau {
            Some(t) => vec![scaled_floor(t, n)].into_iter().filter(|&p| p <= limit).collect(),
            None => (0..=args.p.unwrap_or(limit).min(limit)).collect(),
        }
    };
    if kind.is_hypercube() {
        let q = fam.q.ok_or_else(|| usage("--q is required for hypercubes"))?;
        if q < 2 {
            return Err(usage("--q must be at least 2"));
        }
        return Ok(p_values(n).into_iter().map(|p| Instance::hypercube(kind, q, n).with_p(p, p)).collect());
    }
    let r_values: Vec<u32> = match fam.rho {
        Some(rho) => vec![scaled_floor(rho, n)],
        None => (1..=args.r.unwrap_or(n)).collect(),
    };
    let mut out = Vec::new();
    for r in r_values.into_iter().filter(|&r| r > 0) {
        for p in p_values(r) {
            out.push(Instance::simplex(kind, n, n, r).with_p(p, p));
        }
    }
    Ok(out)
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<ValidateReport, CliError> {
    let kind = args.family.kind()?;
    if args.n_min == 0 || args.n_max < args.n_min {
        return Err(usage("need 1 <= --n-min <= --n-max"));
    }
    if args.enum_cap == 0 || args.dp_cap == 0 {
        return Err(usage("caps must be positive"));
    }
    if args.n_max > args.dp_cap {
        return Err(usage(format!("--n-max {} exceeds the DP cap {}", args.n_max, args.dp_cap)));
    }
    let mut instances = Vec::new();
    let mut skipped = Vec::new();
    for n in args.n_min..=args.n_max {
        let found = instances_at(args, kind, n)?;
        if found.is_empty() {
            skipped.push(format!("n={n}: no admissible (r, p)"));
        }
        instances.extend(found);
    }
    let q = args.family.q.unwrap_or(0);
    let max_r = instances.iter().map(|i| i.shape.r).max().unwrap_or(0);
    let max_p = instances.iter().map(|i| i.shape.p1).max().unwrap_or(0);
    let series = match PairSeries::new(kind, q, args.n_max, max_r, max_p) {
        Ok(s) => Some(s),
        Err(OracleError::NoGeneratingFunction(_)) => None,
        Err(e) => return Err(CliError::Numerical(e.to_string())),
    };
    let mut dp = DpCounter::new(kind, q, args.dp_cap);
    let mut report = ValidateReport {
        space: kind.cli_name().to_string(),
        rows: Vec::new(),
        totals: Vec::new(),
        ball_rows: Vec::new(),
        skipped,
        mismatches: 0,
        max_n_validated: None,
    };
    let mut validated_through = true;
    for inst in &instances {
        let sh = inst.shape;
        let brute = match pair_histogram(inst, args.enum_cap) {
            Ok(t) => Some(t),
            Err(OracleError::EnumerationCap { .. }) => {
                report.skipped.push(format!("n={}: brute force over the enumeration cap", sh.n1));
                None
            }
            Err(e) => return Err(CliError::Numerical(e.to_string())),
        };
        let dpt: CountTable = dp.table(inst).map_err(|e| CliError::Numerical(e.to_string()))?;
        let sert = series.as_ref().and_then(|s| s.table(inst));
        let mut all_ok = true;
        let sources = 1 + brute.is_some() as usize + sert.is_some() as usize;
        for s in 0..=inst.max_distance() {
            let b = brute.as_ref().map(|t| t.get(s));
            let d = Some(dpt.get(s));
            let g = sert.as_ref().map(|t| t.get(s));
            let vals: Vec<&BigInt> = [&b, &d, &g].into_iter().flatten().collect();
            if vals.iter().all(|v| **v == BigInt::from(0)) {
                continue;
            }
            let ok = vals.windows(2).all(|w| w[0] == w[1]);
            if !ok {
                report.mismatches += 1;
                all_ok = false;
            }
            report.rows.push(CountRow {
                n: sh.n1,
                r: sh.r,
                p: sh.p1,
                s,
                brute: opt_str(&b),
                dp: opt_str(&d),
                series: opt_str(&g),
                ok,
            });
        }
        let expected = space_size(&inst.left()) * space_size(&inst.right());
        let sum = dpt.total();
        let ok = sum == expected;
        if !ok {
            report.mismatches += 1;
            all_ok = false;
        }
        report.totals.push(TotalRow { n: sh.n1, sum: sum.to_string(), expected: expected.to_string(), ok });
        if kind == SpaceKind::InvSimplex {
            let pos = Instance { kind: SpaceKind::PosSimplex, ..*inst };
            for d in 0..=2 * sh.n1 {
                let a = total_ball(inst, d, args.dp_cap).map_err(|e| CliError::Numerical(e.to_string()))?;
                let b = total_ball(&pos, d, args.dp_cap).map_err(|e| CliError::Numerical(e.to_string()))?;
                report.ball_rows.push(BallRow {
                    n: sh.n1,
                    r: sh.r,
                    d,
                    equal: a == b,
                    inverted: a.to_string(),
                    positive: b.to_string(),
                });
            }
        }
        validated_through &= all_ok && sources >= 2;
        if validated_through && instances.iter().rev().find(|i| i.shape.n1 == sh.n1) == Some(inst) {
            report.max_n_validated = Some(sh.n1);
        }
    }
    Ok(report)
}

impl ValidateReport {
    pub fn to_text(&self) -> String {
        let dash = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
        let mut out = String::new();
        let _ = writeln!(out, "# {} pair counts: brute force, DP, series", self.space);
        let _ = writeln!(out, "{:>3} {:>3} {:>3} {:>4} {:>24} {:>24} {:>24}  status", "n", "r", "p", "s", "brute", "dp", "series");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>3} {:>4} {:>24} {:>24} {:>24}  {}",
                r.n,
                r.r,
                r.p,
                r.s,
                dash(&r.brute),
                dash(&r.dp),
                dash(&r.series),
                if r.ok { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(out, "# totals: sum over s against |S|^2");
        for t in &self.totals {
            let _ = writeln!(out, "{:>3} {:>28} {:>28}  {}", t.n, t.sum, t.expected, if t.ok { "ok" } else { "MISMATCH" });
        }
        if !self.ball_rows.is_empty() {
            let _ = writeln!(out, "# total balls: inverted vs positive simplex (informational)");
            for b in &self.ball_rows {
                let _ = writeln!(
                    out,
                    "{:>3} {:>3} {:>4} {:>24} {:>24}  {}",
                    b.n,
                    b.r,
                    b.d,
                    b.inverted,
                    b.positive,
                    if b.equal { "equal" } else { "differ" }
                );
            }
        }
        for s in &self.skipped {
            let _ = writeln!(out, "# skipped {s}");
        }
        let through = self.max_n_validated.map_or("none".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            "summary: {} rows, {} mismatches, validated through n = {}",
            self.rows.len() + self.totals.len(),
            self.mismatches,
            through
        );
        out
    }
}
