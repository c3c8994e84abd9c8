use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::theta_lngamma;
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Settings for the hybrid Z evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RSEvalConfig {
    /// Below this t, Euler–Maclaurin; at or above, Riemann–Siegel.
    pub t_switch: f64,
    /// Riemann–Siegel correction terms kept: 0 (main sum only), 1 (C0), 2 (C0, C1).
    pub n_corrections: u8,
    /// Number of Bernoulli terms in the Euler–Maclaurin tail.
    pub em_order: usize,
}

impl Default for RSEvalConfig {
    fn default() -> Self {
        Self {
            t_switch: 200.0,
            n_corrections: 2,
            em_order: 12,
        }
    }
}

impl RSEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_switch >= 10.0) {
            return Err(Error::Parameter(format!(
                "t_switch must be >= 10, got {}",
                self.t_switch
            )));
        }
        if self.n_corrections > 2 {
            return Err(Error::Parameter(format!(
                "n_corrections must be in 0..=2, got {}",
                self.n_corrections
            )));
        }
        if self.em_order < 2 || self.em_order > BERNOULLI.len() {
            return Err(Error::Parameter(format!(
                "em_order must be in 2..={}, got {}",
                BERNOULLI.len(),
                self.em_order
            )));
        }
        Ok(())
    }
}

/// Which backend produced a Z value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZMethod {
    EulerMaclaurin,
    RiemannSiegel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZValue {
    pub value: f64,
    /// Magnitude of the first omitted term.
    pub error_estimate: f64,
    pub method: ZMethod,
}

impl ZValue {
    pub const WARN_LEVEL: f64 = 1e-3;

    pub fn precision_warning(&self) -> bool {
        self.error_estimate > Self::WARN_LEVEL
    }
}

/// Riemann–Siegel theta from its asymptotic series,
/// (t/2) ln(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + 31/(80640t⁵) + 127/(430080t⁷).
///
/// Truncation error is below 5e-13 for t ≥ 10.
pub fn theta(t: f64) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::Domain(format!("theta requires t >= 1, got {t}")));
    }
    Ok(theta_series(t))
}

#[inline]
pub(crate) fn theta_series(t: f64) -> f64 {
    let r = 1.0 / t;
    let r2 = r * r;
    theta_main(t) + r * (1.0 / 48.0 + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0))))
}

/// Leading part (t/2) ln(t/2π) − t/2 − π/8.
#[inline]
pub fn theta_main(t: f64) -> f64 {
    0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0
}

fn theta_any(t: f64) -> f64 {
    if t >= 10.0 {
        theta_series(t)
    } else {
        theta_lngamma(t)
    }
}

/// B_2 .. B_40.
const BERNOULLI: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

/// ζ(s) on the critical line by Euler–Maclaurin summation. Returns the
/// value and the size of the first omitted tail term.
pub fn zeta_em(t: f64, order: usize) -> (Complex64, f64) {
    let s = Complex64::new(0.5, t);
    let n = (t.abs() / 2.0).ceil() as usize + 20;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let lk = (k as f64).ln();
        sum += (-s * lk).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow_s = (-s * ln_n).exp();
    sum += n_pow_s * nf / (s - 1.0) + 0.5 * n_pow_s;

    // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let order = order.min(BERNOULLI.len() - 1);
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow_s / nf;
    let mut last = 0.0;
    for k in 1..=order + 1 {
        let term = rising * npow * (BERNOULLI[k - 1] / fact);
        if k <= order {
            sum += term;
        } else {
            last = term.norm();
        }
        let j = 2.0 * k as f64;
        rising *= (s + (j - 1.0)) * (s + j);
        fact *= (j + 1.0) * (j + 2.0);
        npow /= nf * nf;
    }
    (sum, last)
}

// Taylor coefficients of C0 and C1 in z = 2p - 1, p the fractional part of
// sqrt(t/2π). C0 is even in z, C1 odd.
const C0: [f64; 22] = [
    0.382_683_432_365_089_771_73,
    0.437_240_468_077_520_449_36,
    0.132_376_575_480_343_523_32,
    -0.013_605_026_047_674_188_655,
    -0.013_567_621_970_103_580_888,
    -0.001_623_725_323_144_465_282_9,
    0.000_297_053_537_333_796_907_83,
    0.000_079_433_008_795_214_695_88,
    4.655_612_461_450_450_503_7e-7,
    -1.432_725_163_095_510_575_4e-6,
    -1.035_484_711_231_294_607_5e-7,
    1.235_792_708_386_173_805_6e-8,
    1.788_108_385_795_490_498_6e-9,
    -3.391_414_389_927_035_906_9e-11,
    -1.632_663_390_256_590_510_1e-11,
    -3.785_109_318_541_220_382_9e-13,
    9.327_423_259_201_724_845_7e-14,
    5.221_843_015_978_136_855_3e-15,
    -3.350_673_072_744_263_789_5e-16,
    -3.412_426_522_811_726_494_1e-17,
    5.751_203_341_432_399_160_3e-19,
    1.489_530_136_321_150_545_3e-19,
];

const C1: [f64; 21] = [
    -0.026_825_102_628_375_347_03,
    0.013_784_773_426_351_853_05,
    0.038_491_250_482_235_082_229,
    0.009_871_066_299_062_076_472,
    -0.003_310_759_760_858_404_332_9,
    -0.001_464_780_857_795_415_082_5,
    -0.000_013_207_940_624_876_963_675,
    0.000_059_227_487_018_471_413_232,
    5.980_242_585_373_448_587_7e-6,
    -9.641_322_456_169_826_352_7e-7,
    -1.833_473_372_271_441_176e-7,
    4.467_087_562_717_833_599_6e-9,
    2.709_635_082_177_274_321_7e-9,
    7.785_288_654_315_851_046_3e-11,
    -2.343_762_601_089_368_853_2e-11,
    -1.583_017_278_998_752_164_2e-12,
    1.211_994_157_372_379_124_7e-13,
    1.458_378_116_110_830_701_8e-14,
    -2.878_630_525_813_191_750_4e-16,
    -8.662_862_902_123_724_121_6e-17,
    -8.430_722_727_137_040_630_8e-19,
];

fn horner_even(coef: &[f64], z2: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * z2 + c)
}

pub(crate) fn rs_c0(z: f64) -> f64 {
    horner_even(&C0, z * z)
}

pub(crate) fn rs_c1(z: f64) -> f64 {
    z * horner_even(&C1, z * z)
}

/// Riemann–Siegel main sum 2 Σ_{n ≤ τ} n^{-1/2} cos(θ − t ln n) for a given θ.
#[inline]
pub(crate) fn rs_main_sum(t: f64, theta: f64, n_terms: usize) -> f64 {
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        sum += (theta - t * nf.ln()).cos() / nf.sqrt();
    }
    2.0 * sum
}

fn z_riemann_siegel(t: f64, n_corrections: u8) -> (f64, f64) {
    let a = t / TWO_PI;
    let tau = a.sqrt();
    let n = tau.floor() as usize;
    let p = tau - n as f64;
    let main = rs_main_sum(t, theta_series(t), n);
    let a_q = a.powf(-0.25);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let z = 2.0 * p - 1.0;
    let mut corr = 0.0;
    if n_corrections >= 1 {
        corr += rs_c0(z);
    }
    if n_corrections >= 2 {
        corr += rs_c1(z) / tau;
    }
    let err = match n_corrections {
        0 => 0.93 * a_q,
        1 => 0.04 * a_q / tau,
        _ => 0.01 * a_q / a,
    };
    (main + sign * a_q * corr, err)
}

fn z_euler_maclaurin(t: f64, order: usize) -> (f64, f64) {
    let (zeta, err) = zeta_em(t, order);
    let phase = Complex64::from_polar(1.0, theta_any(t));
    ((phase * zeta).re, err)
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real, with |Z(t)| = |ζ(1/2 + it)|.
pub fn z_eval(t: f64, cfg: &RSEvalConfig) -> Result<ZValue> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("z_eval requires t >= 0, got {t}")));
    }
    let (value, error_estimate, method) = if t < cfg.t_switch {
        let (v, e) = z_euler_maclaurin(t, cfg.em_order);
        (v, e, ZMethod::EulerMaclaurin)
    } else {
        let (v, e) = z_riemann_siegel(t, cfg.n_corrections);
        (v, e, ZMethod::RiemannSiegel)
    };
    Ok(ZValue {
        value,
        error_estimate,
        method,
    })
}

/// Z(t) without bookkeeping, for quadrature inner loops. Caller guarantees t ≥ 0.
#[inline]
pub fn z_value(t: f64, cfg: &RSEvalConfig) -> f64 {
    if t < cfg.t_switch {
        z_euler_maclaurin(t, cfg.em_order).0
    } else {
        z_riemann_siegel(t, cfg.n_corrections).0
    }
}

/// Forces the Euler–Maclaurin route regardless of `t_switch`.
pub fn z_em(t: f64, em_order: usize) -> f64 {
    z_euler_maclaurin(t.abs(), em_order).0
}

/// Forces the Riemann–Siegel route regardless of `t_switch`.
pub fn z_rs(t: f64, n_corrections: u8) -> f64 {
    z_riemann_siegel(t, n_corrections).0
}

/// Points 2πn² where the Riemann–Siegel sum gains a term; Z_RS is only
/// continuous there up to its truncation error.
pub fn rs_breakpoints(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let first = (lo / TWO_PI).max(0.0).sqrt().floor() as u64;
    (first..)
        .map(|n| TWO_PI * (n * n) as f64)
        .skip_while(move |&x| x <= lo)
        .take_while(move |&x| x < hi)
}
