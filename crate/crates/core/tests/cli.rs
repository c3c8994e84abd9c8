mod common;

use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use zladder::cli::{CacheReport, ChiReport, LadderReport, MomentReport, PiReport, ThetaReport, ZReport};
use zladder::experiments::{ComplementReport, Decomposition, DistinctScan};
use zladder::ladder::SegmentChain;
use zladder::report::from_json;
use zladder::transform::FactorizationReport;

fn zladder(args: &[&str]) -> Output {
    common::table();
    Command::new(env!("CARGO_BIN_EXE_zladder"))
        .args(args)
        .env("ZLADDER_CACHE_DIR", common::cache_dir())
        .output()
        .unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = zladder(&full);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

#[test]
fn every_subcommand_roundtrips_json() {
    let z: ZReport = json(&["z", "--t", "1000"]);
    assert!((z.value - 0.9977946375215866).abs() < 2e-5);
    let th: ThetaReport = json(&["theta", "--t", "100"]);
    assert!((th.theta - 87.97216523178722).abs() < 1e-9);
    let chi: ChiReport = json(&["chi-check", "--t", "100"]);
    assert!(chi.deviation.abs() <= 1e-8);
    let pi: PiReport = json(&["pi", "--x", "10000"]);
    assert_eq!(pi.pi, 1229.0);
    let mo: MomentReport = json(&["moment", "--T", "100"]);
    assert!((mo.value - 295.635099054719).abs() < 1e-6);
    let la: LadderReport = json(&["ladder", "--T", "10000"]);
    assert!(la.phi1 < 1e4 && la.phi1_inverse > 1e4);
    let ch: SegmentChain = json(&["chain", "--L", "1600", "--U", "1", "--k", "2"]);
    assert_eq!(ch.levels.len(), 2);
    let rep: FactorizationReport = json(&["theorem", "--L", "1600", "--U", "1.0", "--k", "1", "--a", "2", "--b", "1"]);
    assert!((rep.lhs / rep.rhs_exact - 1.0).abs() < 1e-6);
    let de: Decomposition = json(&["decompose", "--L", "1600", "--U", "1.0"]);
    assert_eq!(de.signal, rep.signal);
    let ds: DistinctScan = json(&["distinct-scan", "--L", "1600", "--n", "3", "--delta", "0.1"]);
    assert_eq!(ds.tuples.len(), 3);
    let co: ComplementReport = json(&["complement", "--T", "10000,20000"]);
    assert_eq!(co.rows.len(), 2);
    let cb: CacheReport = json(&["cache-build", "--T", "50000"]);
    assert_eq!(cb.nodes, common::table().grid.len());
}

#[test]
fn chi_check_prints_one() {
    let out = zladder(&["chi-check", "--t", "100"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1.000000000"), "{text}");
}

#[test]
fn u_out_of_range_exits_one() {
    let out = zladder(&["theorem", "--L", "1600", "--U", "4.0", "--k", "1", "--a", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("U must be in (0, pi)"));
}

#[test]
fn bad_flags_and_domains_exit_one() {
    assert_eq!(zladder(&["theorem", "--L", "1600", "--U", "1", "--bogus"]).status.code(), Some(1));
    assert_eq!(zladder(&["theta", "--t", "0.5"]).status.code(), Some(1));
    assert_eq!(zladder(&["theorem", "--L", "1600", "--U", "1", "--a", "1", "--b", "2"]).status.code(), Some(1));
    assert_eq!(zladder(&["chain", "--L", "1600", "--U", "1", "--k", "4"]).status.code(), Some(1));
}

#[test]
fn csv_and_table_formats() {
    let out = zladder(&["theorem", "--L", "1600", "--U", "1.0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    for col in ["lhs", "rhs_asym", "rhs_exact", "signal", "noise", "error_residual", "alphas_0", "spacing_ratios_0"] {
        assert!(header.split(',').any(|h| h == col), "missing {col}");
    }
    let out = zladder(&["theorem", "--L", "1600", "--U", "1.0", "--k", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("spacing_ratios_0") && text.contains("spacing_ratios_1"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = zladder(&["theta", "--t", "1000", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let th: ThetaReport = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((th.theta - 2034.5464280380316).abs() < 1e-9);
}
