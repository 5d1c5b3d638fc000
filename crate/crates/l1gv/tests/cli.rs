use std::process::Command;

use l1gv::bounds::{rate_curve, BoundKind, RhoMode};
use l1gv::cli::run;
use l1gv::family::{SpaceFamily, SpaceKind};

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("l1gv").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn family_of(space: &str, params: &str) -> (SpaceFamily, RhoMode) {
    let get = |k: &str| {
        params
            .split(';')
            .find_map(|kv| kv.strip_prefix(k).and_then(|v| v.strip_prefix('=')))
            .map(str::to_string)
    };
    let num = |k: &str| get(k).unwrap().parse::<f64>().unwrap();
    if get("rho").as_deref() == Some("opt") {
        return (SpaceFamily::PosSimplex { rho: 0.5 }, RhoMode::Optimized);
    }
    let fam = match SpaceKind::from_cli_name(space).unwrap() {
        SpaceKind::StdSimplex => SpaceFamily::StdSimplex { rho: num("rho") },
        SpaceKind::StdSimplexZeros => SpaceFamily::StdSimplexZeros { rho: num("rho"), tau: num("tau") },
        SpaceKind::PosSimplex => SpaceFamily::PosSimplex { rho: num("rho") },
        SpaceKind::PosSimplexOnes => SpaceFamily::PosSimplexOnes { rho: num("rho"), tau: num("tau") },
        SpaceKind::InvSimplex => SpaceFamily::InvSimplex { rho: num("rho") },
        SpaceKind::Hypercube => SpaceFamily::Hypercube { q: num("q") as u32 },
        SpaceKind::HypercubeZeros => SpaceFamily::HypercubeZeros { q: num("q") as u32, tau: num("tau") },
    };
    (fam, RhoMode::Fixed)
}

struct Row {
    space: String,
    params: String,
    bound: String,
    delta: f64,
    rate: f64,
}

fn parse_csv(text: &str) -> Vec<Row> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("space,params,bound,delta,rate,aux"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 6, "{l}");
            Row {
                space: f[0].to_string(),
                params: f[1].to_string(),
                bound: f[2].to_string(),
                delta: f[3].parse().unwrap(),
                rate: f[4].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn presets_are_deterministic() {
    for p in ["fig1", "fig2", "fig3"] {
        let (c1, a) = call(&["--preset", p]);
        let (c2, b) = call(&["curve", "--preset", p]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b, "{p}");
        assert!(a.ends_with('\n') && !a.contains('\r'));
    }
}

#[test]
fn preset_matches_explicit_flags() {
    let (_, a) = call(&["--preset", "fig1"]);
    let (_, b) = call(&["curve", "--space", "std-simplex", "--rho", "2", "--bounds", "gv,gvmr,sp,cw", "--delta", "0:2:0.01"]);
    assert_eq!(a, b);
    let (_, a) = call(&["--preset", "fig2"]);
    let (_, b) = call(&["curve", "--space", "pos-simplex", "--opt-rho", "--bounds", "gv,gvmr,kk", "--delta", "0:0.6:0.005"]);
    assert_eq!(a, b);
    let (_, a) = call(&["--preset", "fig3"]);
    let (_, b) = call(&["curve", "--space", "hypercube", "--q", "4", "--bounds", "gv,gvmr,lee", "--delta", "0:1.3:0.005"]);
    assert_eq!(a, b);
}

#[test]
fn csv_rows_round_trip() {
    let mut texts: Vec<String> = ["fig1", "fig2", "fig3"].iter().map(|p| call(&["--preset", p]).1).collect();
    for args in [
        &["curve", "--space", "std-simplex-zeros", "--rho", "2", "--tau", "1.4", "--bounds", "gv,cap", "--delta", "0:1.5:0.1"][..],
        &["curve", "--space", "hypercube-zeros", "--q", "4", "--tau", "0.3", "--bounds", "gv", "--delta", "0:1:0.1"][..],
        &["curve", "--space", "inv-simplex", "--rho", "0.3", "--bounds", "gv,gvmr", "--delta", "0:0.6:0.05"][..],
    ] {
        let (code, t) = call(args);
        assert_eq!(code, 0);
        texts.push(t);
    }
    for t in texts {
        for r in parse_csv(&t) {
            let (fam, mode) = family_of(&r.space, &r.params);
            let kind = BoundKind::from_cli_name(&r.bound).unwrap();
            let c = rate_curve(&fam, kind, mode, &[r.delta]).unwrap();
            let got = c.samples[0].rate;
            assert!((got - r.rate).abs() <= 1e-12, "{} {} {} at {}: {} vs {}", r.space, r.params, r.bound, r.delta, got, r.rate);
        }
    }
}

#[test]
fn curve_landmarks() {
    let rows = parse_csv(&call(&["--preset", "fig1"]).1);
    let gv15 = rows.iter().find(|r| r.bound == "gv" && (r.delta - 1.5).abs() < 1e-9).unwrap();
    assert!(gv15.rate <= 1e-9);
    let rows = parse_csv(&call(&["--preset", "fig3"]).1);
    let last = rows.iter().rfind(|r| r.bound == "gvmr" && r.rate > 0.0).unwrap();
    assert!(last.delta < 9.0 / 7.0 && last.delta + 0.005 > 9.0 / 7.0);
    let rows = parse_csv(&call(&["--preset", "fig2"]).1);
    for b in ["gv", "gvmr", "kk"] {
        let r = rows.iter().find(|r| r.bound == b && r.delta == 0.0).unwrap();
        assert!((r.rate - 1.0).abs() < 1e-9, "{b}");
    }
}

#[test]
fn json_curve_output() {
    let (code, t) = call(&["curve", "--space", "pos-simplex", "--rho", "0.5", "--bounds", "kk", "--delta", "0.4:0.6:0.1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&t).unwrap();
    let c = &v.as_array().unwrap()[0];
    assert_eq!(c["samples"].as_array().unwrap().len(), 2);
    assert_eq!(c["gaps"].as_array().unwrap().len(), 1);
}

#[test]
fn critical_reports() {
    let (code, t) = call(&["critical", "--space", "std-simplex", "--rho", "2", "--delta", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&t).unwrap();
    let p = &v["point"];
    let (x, y, z) = (p["x"].as_f64().unwrap(), p["y"].as_f64().unwrap(), p["z"].as_f64().unwrap());
    assert!((x - 0.4472136).abs() < 1e-7);
    assert!((x * z - 0.2360680).abs() < 1e-7);
    assert!((y - 0.4944272).abs() < 1e-7);
    assert!(v["residual_H"].as_f64().unwrap() < 1e-9 && v["residual_prop"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["source"], "closed_form");
    assert!(v["agreement"].as_f64().unwrap() < 1e-8);

    let v: serde_json::Value = serde_json::from_str(&call(&["critical", "--space", "hypercube", "--q", "2", "--delta", "0.25"]).1).unwrap();
    assert!((v["point"]["y"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);

    let v: serde_json::Value = serde_json::from_str(&call(&["critical", "--space", "std-simplex", "--rho", "2", "--delta", "0"]).1).unwrap();
    assert_eq!(v["branch"], "analytic");
    assert!((v["rate"].as_f64().unwrap() - 2.7548875021634687).abs() < 1e-12);
}

#[test]
fn validate_reports() {
    let (code, t) = call(&["validate", "--space", "std-simplex", "--n-max", "8", "--r", "4"]);
    assert_eq!(code, 0, "{t}");
    assert!(t.contains("0 mismatches"));
    let (_, j) = call(&["validate", "--space", "std-simplex", "--n-max", "4", "--r", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["n"] == 2 && r["r"] == 2 && r["s"] == 2 && r["p"] == 0 && r["dp"] == "4"), "{j}");

    let (code, j) = call(&["validate", "--space", "hypercube", "--q", "3", "--n-max", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["totals"].as_array().unwrap().len(), 6);

    let (code, t) = call(&["validate", "--space", "inv-simplex", "--n-max", "8"]);
    assert_eq!(code, 0);
    assert!(t.contains("validated through n = 8"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["curve", "--space", "nowhere", "--bounds", "gv", "--delta", "0:1:0.1"]).0, 1);
    assert_eq!(call(&["curve", "--space", "std-simplex", "--rho", "2", "--bounds", "gv", "--delta", "1:0:0.1"]).0, 1);
    assert_eq!(call(&["curve", "--space", "std-simplex", "--rho", "2", "--bounds", "gv", "--delta", "0:1:0"]).0, 1);
    assert_eq!(call(&["curve", "--space", "std-simplex", "--rho", "2", "--bounds", "lee", "--delta", "0:1:0.1"]).0, 1);
    assert_eq!(call(&["curve", "--space", "std-simplex", "--rho", "2"]).0, 1);
    assert_eq!(call(&["critical", "--space", "std-simplex", "--delta", "1"]).0, 1);
    assert_eq!(call(&["--preset", "fig1", "critical", "--space", "hypercube", "--q", "2", "--delta", "0.1"]).0, 1);
    assert_eq!(call(&["curve", "--space", "pos-simplex", "--rho", "0.5", "--bounds", "kk", "--delta", "0.6:0.7:0.05"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes_and_output_file() {
    let bin = env!("CARGO_BIN_EXE_l1gv");
    let st = Command::new(bin).args(["validate", "--space", "hypercube"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let path = std::env::temp_dir().join(format!("l1gv-cli-{}.csv", std::process::id()));
    let st = Command::new(bin)
        .args(["curve", "--space", "hypercube", "--q", "2", "--bounds", "gv", "--delta", "0:0.5:0.25", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(st.stdout.is_empty());
    let rows = parse_csv(&std::fs::read_to_string(&path).unwrap());
    std::fs::remove_file(&path).unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[1].rate - (1.0 - l1gv::entropy::h2(0.25))).abs() < 1e-12);
}
