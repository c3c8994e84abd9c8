mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zladder::moment::{
    build_checkpoints, hl_asymptotic, hl_integral, integrate_z2, integrate_z2_with, Backend,
    MomentCheckpointTable, EULER_GAMMA,
};
use zladder::special::{z_value, RSEvalConfig};
use zladder::Error;

// mpmath quad of siegelz**2 at 30 digits.
const I_10: f64 = 9.98273463791899;
const I_100: f64 = 295.635099054719;

fn simpson_z2(a: f64, b: f64, n: usize) -> f64 {
    let cfg = RSEvalConfig::default();
    let h = (b - a) / n as f64;
    let f = |t: f64| z_value(t, &cfg).powi(2);
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

#[test]
fn zero_height_is_zero() {
    let table = common::table();
    assert_eq!(table.integral(0.0).unwrap(), 0.0);
    assert_eq!(hl_integral(0.0, Backend::Quadrature, Some(&table), 0.0).unwrap(), 0.0);
}

#[test]
fn t100_matches_simpson_and_reference() {
    let table = common::table();
    let q = table.integral(100.0).unwrap();
    let s = simpson_z2(0.0, 100.0, 100_000);
    assert!(((q - s) / s).abs() < 1e-6, "{q} vs simpson {s}");
    assert!(((q - I_100) / I_100).abs() < 1e-9, "{q} vs {I_100}");
}

#[test]
fn small_table_matches_direct_quadrature() {
    let cfg = RSEvalConfig::default();
    let table = build_checkpoints(10.0, 1e-10).unwrap();
    let direct = integrate_z2(0.0, 10.0, &cfg, 1e-12).unwrap();
    let tabled = table.integral(10.0).unwrap();
    assert!(((tabled - direct) / direct).abs() < 1e-8);
    assert!(((tabled - I_10) / I_10).abs() < 1e-8, "{tabled}");
}

#[test]
fn save_reload_is_bit_identical() {
    let table = build_checkpoints(60.0, 1e-10).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.ckpt");
    table.save(&path).unwrap();
    let back = MomentCheckpointTable::load(&path).unwrap();
    assert_eq!(back.grid.len(), table.grid.len());
    for (a, b) in table.grid.iter().zip(&back.grid) {
        assert_eq!(a.0.to_bits(), b.0.to_bits());
        assert_eq!(a.1.to_bits(), b.1.to_bits());
    }
    assert_eq!(back.z_cfg, table.z_cfg);
    assert_eq!(back.tol, table.tol);
    assert_eq!(back.panel_fraction, table.panel_fraction);
}

#[test]
fn query_between_nodes_matches_fresh_integral() {
    let cfg = RSEvalConfig::default();
    let table = common::table();
    for &t in &[1234.567, 2718.2818, 9999.5] {
        let via_table = table.integral(t).unwrap();
        let fresh = table.integral(1000.0).unwrap() + integrate_z2(1000.0, t, &cfg, 1e-12).unwrap();
        assert!(((via_table - fresh) / fresh).abs() < 1e-9, "{t}: {via_table} vs {fresh}");
    }
}

#[test]
fn halving_panel_width_is_invariant() {
    let cfg = RSEvalConfig::default();
    let tol = 1e-10;
    let coarse = integrate_z2_with(1000.0, 1400.0, &cfg, tol, 0.25).unwrap();
    let fine = integrate_z2_with(1000.0, 1400.0, &cfg, tol, 0.125).unwrap();
    assert!(((coarse - fine) / fine).abs() <= 2.0 * tol, "{coarse} vs {fine}");
}

#[test]
fn finite_difference_recovers_z_squared() {
    let cfg = RSEvalConfig::default();
    let table = common::table();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let t: f64 = rng.gen_range(100.0..10_000.0);
        let z2 = z_value(t, &cfg).powi(2);
        if z2 < 0.01 {
            continue;
        }
        let h = 2e-4;
        let d = (table.integral(t + h).unwrap() - table.integral(t - h).unwrap()) / (2.0 * h);
        assert!(((d - z2) / z2).abs() < 1e-4, "t = {t}: {d} vs {z2}");
        checked += 1;
    }
}

#[test]
fn grid_is_strictly_increasing() {
    let table = common::table();
    assert!(table.grid.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1));
    assert_eq!(table.grid[0], (0.0, 0.0));
}

#[test]
fn backends_agree_at_5000() {
    let table = common::table();
    let q = hl_integral(5000.0, Backend::Quadrature, Some(&table), 0.0).unwrap();
    let a = hl_integral(5000.0, Backend::Asymptotic, None, 0.0).unwrap();
    assert!(((q - a) / q).abs() < 0.01);
    assert_eq!(a, hl_asymptotic(5000.0, EULER_GAMMA, 0.0));
}

#[test]
fn beyond_table_is_resource_error() {
    let table = common::table();
    let r = table.integral(table.t_max() + 1.0);
    assert!(matches!(r, Err(Error::Resource(_))));
    assert!(hl_integral(1e9, Backend::Asymptotic, None, 0.0).is_ok());
}
