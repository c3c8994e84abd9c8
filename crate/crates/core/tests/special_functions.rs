use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use zladder::special::{
    chi_mod, prime_pi, spectral_z, theta, theta_main, z_em, z_eval, z_rs, PiMode, RSEvalConfig, SpectralWindow,
    ZMethod,
};

// Lanczos (g = 7, n = 9) log Γ, independent of the library's Stirling route.
fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn theta_oracle(t: f64) -> f64 {
    lanczos_ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

#[test]
fn theta_main_term_is_stationary_at_two_pi() {
    let h = 1e-5;
    let d = (theta_main(2.0 * PI + h) - theta_main(2.0 * PI - h)) / (2.0 * h);
    assert!(d.abs() < 1e-9, "derivative {d}");
}

#[test]
fn theta_matches_log_gamma_oracle() {
    // mpmath siegeltheta(100) = 87.97216523178722
    let t100 = theta(100.0).unwrap();
    assert!((t100 - 87.972_165_231_787_22).abs() < 1e-9, "{t100}");
    assert!((t100 - theta_oracle(100.0)).abs() < 1e-9);
    let t1000 = theta(1000.0).unwrap();
    assert!((t1000 - theta_oracle(1000.0)).abs() < 1e-9);
    assert!((t1000 - 2_034.546_428_038_031_6).abs() < 1e-9);
    for &t in &[10.0, 17.5, 42.0, 350.0, 5_000.0] {
        assert!((theta(t).unwrap() - theta_oracle(t)).abs() < 1e-10, "t = {t}");
    }
}

#[test]
fn z_at_zero_is_zeta_half() {
    let z = z_eval(0.0, &RSEvalConfig::default()).unwrap();
    assert_eq!(z.method, ZMethod::EulerMaclaurin);
    assert!((z.value - (-1.460_354_508_809_586_8)).abs() < 1e-10, "{}", z.value);
}

#[test]
fn first_zero_by_sign_change() {
    let cfg = RSEvalConfig::default();
    assert!(z_eval(14.134725, &cfg).unwrap().value.abs() < 1e-4);

    // bisection on a sign change bracketed from a coarse scan
    let z = |t: f64| z_eval(t, &cfg).unwrap().value;
    let mut t = 10.0;
    while z(t).signum() == z(t + 0.1).signum() {
        t += 0.1;
    }
    let (mut lo, mut hi) = (t, t + 0.1);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if z(mid).signum() == z(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((lo - 14.134_725_141_734_694).abs() < 1e-9, "{lo}");
}

#[test]
fn frozen_reference_values() {
    // mpmath siegelz at 50 digits
    let cfg = RSEvalConfig::default();
    let cases = [
        (10.0, -1.549_194_546_181_022_4, 1e-10),
        (150.0, -0.091_010_923_267_403_59, 1e-10),
        (199.0, 4.512_261_983_568_297_8, 1e-10),
        (201.0, 1.066_806_432_917_013, 2e-4),
        (1_000.0, 0.997_794_637_521_586_6, 2e-5),
        (10_000.0, -0.341_394_724_231_208_56, 1e-6),
    ];
    for (t, expect, tol) in cases {
        let got = z_eval(t, &cfg).unwrap().value;
        assert!((got - expect).abs() < tol, "t = {t}: {got} vs {expect}");
    }
}

#[test]
fn backends_agree_near_switch() {
    let cfg = RSEvalConfig::default();
    for &t in &[cfg.t_switch - 1.0, cfg.t_switch - 0.3, cfg.t_switch + 0.4, cfg.t_switch + 1.0] {
        for nc in 0..=2u8 {
            let d = (z_rs(t, nc) - z_em(t, cfg.em_order)).abs();
            let bound = if nc == 0 { 0.3 } else { 5e-3 };
            assert!(d <= bound, "t = {t}, n_corrections = {nc}: {d}");
        }
    }
}

#[test]
fn rs_error_shrinks_over_dyadic_blocks() {
    let blocks = [(100.0, 200.0), (200.0, 400.0), (400.0, 800.0), (800.0, 1600.0)];
    let mut prev = f64::INFINITY;
    for (lo, hi) in blocks {
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let t = lo + (hi - lo) * (i as f64 + 0.5) / 200.0;
            worst = worst.max((z_rs(t, 1) - z_em(t, 12)).abs());
        }
        assert!(worst < prev, "block [{lo}, {hi}] max {worst} >= {prev}");
        prev = worst;
    }
}

#[test]
fn precision_warning_flags_uncorrected_sum() {
    let cfg = RSEvalConfig {
        n_corrections: 0,
        ..Default::default()
    };
    assert!(z_eval(1000.0, &cfg).unwrap().precision_warning());
    assert!(!z_eval(1000.0, &RSEvalConfig::default()).unwrap().precision_warning());
}

#[test]
fn chi_modulus_is_one() {
    assert_eq!(chi_mod(0.0).unwrap(), 1.0);
    for &t in &[10.0, 1e2, 1e3, 1e4] {
        let m = chi_mod(t).unwrap();
        assert!((m - 1.0).abs() <= 1e-8, "t = {t}: {m}");
    }
}

#[test]
fn spectral_form_at_anchor_matches_main_sum() {
    let w = SpectralWindow::new(1e4, 5.0).unwrap();
    let n = w.frequencies.len();
    let th = theta(1e4).unwrap();
    let main: f64 = (1..=n)
        .map(|k| 2.0 / (k as f64).sqrt() * (th - 1e4 * (k as f64).ln()).cos())
        .sum();
    let s = spectral_z(1e4, &w).unwrap();
    assert!((s - main).abs() < 1e-3, "{s} vs {main}");
}

#[test]
fn spectral_linearization_shrinks_with_window() {
    // Against the main sum with exact θ, the only error is θ-linearization.
    let main_sum = |t: f64| -> f64 {
        let th = theta(t).unwrap();
        let n = (t / (2.0 * PI)).sqrt().floor() as usize;
        (1..=n).map(|k| 2.0 / (k as f64).sqrt() * (th - t * (k as f64).ln()).cos()).sum()
    };
    let max_err = |v: f64| -> f64 {
        let w = SpectralWindow::new(1e4, v).unwrap();
        (0..=200)
            .map(|i| {
                let t = 1e4 + v * i as f64 / 200.0;
                (spectral_z(t, &w).unwrap() - main_sum(t)).abs()
            })
            .fold(0.0, f64::max)
    };
    let full = max_err(5.0);
    let half = max_err(2.5);
    assert!(full <= 0.05, "{full}");
    assert!(half < full, "{half} vs {full}");
}

fn naive_prime_count(n: usize) -> usize {
    (2..=n).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).count()
}

#[test]
fn prime_pi_values() {
    assert_eq!(prime_pi(10.0, PiMode::ExactSieve).unwrap(), 4.0);
    assert_eq!(prime_pi(1e4, PiMode::ExactSieve).unwrap(), naive_prime_count(10_000) as f64);
    assert_eq!(prime_pi(1e4, PiMode::ExactSieve).unwrap(), 1229.0);
    assert_eq!(prime_pi(1e6, PiMode::ExactSieve).unwrap(), 78498.0);
}

#[test]
fn prime_pi_log_ratio_tends_to_one() {
    let mut prev = f64::INFINITY;
    for &x in &[1e4, 1e5, 1e6] {
        let r = prime_pi(x, PiMode::ExactSieve).unwrap() / prime_pi(x, PiMode::Logarithmic).unwrap();
        assert!((r - 1.0).abs() < prev);
        prev = (r - 1.0).abs();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_pi_monotone(x in 2.0f64..5e4, dx in 0.0f64..500.0) {
        let a = prime_pi(x, PiMode::ExactSieve).unwrap();
        let b = prime_pi(x + dx, PiMode::ExactSieve).unwrap();
        prop_assert!(b >= a);
    }

    #[test]
    fn z_squared_is_zeta_modulus_squared(t in 0.0f64..150.0) {
        let (zeta, _) = zladder::special::zeta_em(t, 12);
        let z = z_eval(t, &RSEvalConfig::default()).unwrap().value;
        prop_assert!((z * z - zeta.norm_sqr()).abs() < 1e-9 * (1.0 + zeta.norm_sqr()));
    }

    #[test]
    fn chi_modulus_unit(t in 0.0f64..1e5) {
        prop_assert!((chi_mod(t).unwrap() - 1.0).abs() <= 1e-8);
    }
}
