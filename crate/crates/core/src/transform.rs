//! The transformation method on a reversely iterated chain.
//!
//! On seg^k the chained integrand
//!
//! ```text
//! f_k(t) = f(φ₁^k(t)) · w_k(t),   w_k(t) = Π_{j<k} Z̃²(φ₁^j(t))
//! ```
//!
//! pulls ∫_base f back to seg^k exactly, because w_k is the derivative of
//! φ₁^k. Mean-value points d (for f_k) and e (for w_k) then carry the
//! factorization
//!
//! ```text
//! Π Z²(α_r)/Z²(β_r) = (J/U)(a + b cos α₀) · Π ω(α_r)/ω(β_r)
//! ```
//!
//! with α_r = φ₁^{k−r}(d) and β_r = φ₁^{k−r}(e).

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_kernel::{arctan_factor, base_mvt_point, closed_integral, kernel_eval, signal_factor, EulerKernel};
use crate::ladder::{omega, phi1_iter, phi1_with_weight, LadderModel, Segment, SegmentChain};
use crate::moment::{zero_spacing, Backend, EULER_GAMMA};
use crate::quadrature::integrate;
use crate::roots::leftmost_crossing;
use crate::special::{prime_pi, spectral_z, theta, theta_main, z_value, PiMode, RSEvalConfig, SpectralWindow};

pub const METHOD: &str = "reconstructed-mvt-chain";
/// Scan points per expected zero spacing of Z.
pub const SCAN_PER_OSCILLATION: usize = 64;
pub const SCAN_REFINE_CAP: usize = 16;
/// Absolute root tolerance for d and e, in t-units.
pub const ROOT_TOL: f64 = 1e-11;
pub const DEFAULT_CHAIN_TOL: f64 = 1e-10;
/// Window length used for the spectral sums of the Q-system.
pub const QSYSTEM_WINDOW: f64 = 1.0;

fn require_quadrature(m: &LadderModel) -> Result<()> {
    if m.backend != Backend::Quadrature {
        return Err(Error::Backend(
            "the transform pipeline requires the quadrature backend".into(),
        ));
    }
    Ok(())
}

/// (f_k(t), w_k(t)) on seg^k.
pub fn chained_f(t: f64, chain: &SegmentChain, kr: &EulerKernel, m: &LadderModel) -> Result<(f64, f64)> {
    let (x, w) = pull_back(t, chain.k, m)?;
    Ok((kernel_eval(kr, x) * w, w))
}

/// (φ₁^k(t), Π_{j<k} Z̃²(φ₁^j(t))).
fn pull_back(t: f64, k: usize, m: &LadderModel) -> Result<(f64, f64)> {
    let mut x = t;
    let mut w = 1.0;
    for _ in 0..k {
        let (y, wt) = phi1_with_weight(x, m)?;
        w *= wt;
        x = y;
    }
    Ok((x, w))
}

fn integrate_fallible<G>(g: G, seg: &Segment, rel_tol: f64, scale: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let f = |t: f64| match g(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let panels = (seg.len() / (0.25 * zero_spacing(seg.lo))).ceil().max(1.0) as usize;
    let est = integrate(&f, seg.lo, seg.hi, panels, rel_tol, scale);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est?.value)
}

/// ∫_{seg^k} f_k, which equals ∫_base f.
pub fn chain_integral(chain: &SegmentChain, kr: &EulerKernel, m: &LadderModel, tol: f64) -> Result<f64> {
    require_quadrature(m)?;
    let seg = chain.deepest();
    let scale = closed_integral(kr, chain.l, chain.u)? / seg.len();
    integrate_fallible(|t| Ok(chained_f(t, chain, kr, m)?.0), seg, tol, scale)
}

/// ∫_{seg^k} w_k, which equals U.
pub fn weight_integral(chain: &SegmentChain, m: &LadderModel, tol: f64) -> Result<f64> {
    require_quadrature(m)?;
    let seg = chain.deepest();
    integrate_fallible(|t| Ok(pull_back(t, chain.k, m)?.1), seg, tol, chain.u / seg.len())
}

/// Scan size giving [`SCAN_PER_OSCILLATION`] points per zero spacing.
pub fn default_scan_n(seg: &Segment) -> usize {
    let per = zero_spacing(seg.lo);
    ((seg.len() / per) * SCAN_PER_OSCILLATION as f64).ceil().max(SCAN_PER_OSCILLATION as f64) as usize
}

/// Leftmost t in `seg` where `g` meets `target`.
pub fn find_mvt_point<G>(g: G, seg: &Segment, target: f64, scan_n: usize) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    leftmost_crossing(g, seg.lo, seg.hi, target, scan_n, SCAN_REFINE_CAP, ROOT_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionResult {
    pub d: f64,
    pub e: f64,
    /// α₀..α_k.
    pub alphas: Vec<f64>,
    /// β₁..β_k.
    pub betas: Vec<f64>,
    pub tol: f64,
    /// J = ∫_base f.
    pub j: f64,
    pub seg_len: f64,
    /// f_k(d)·|seg^k| − J.
    pub d_residual: f64,
    /// w_k(e)·|seg^k| − U.
    pub e_residual: f64,
}

impl ExtractionResult {
    pub fn k(&self) -> usize {
        self.betas.len()
    }

    pub fn beta(&self, r: usize) -> f64 {
        self.betas[r - 1]
    }

    /// Membership and ordering checks; `slack` absorbs inversion tolerance
    /// at segment ends.
    pub fn check_invariants(&self, chain: &SegmentChain, cfg: &RSEvalConfig, slack: f64) -> Result<()> {
        let inside = |t: f64, s: &Segment| t >= s.lo - slack && t <= s.hi + slack;
        let fail = |msg: String| Err(Error::Convergence(msg));
        if !inside(self.alphas[0], &chain.base) {
            return fail(format!("alpha_0 = {} outside base {:?}", self.alphas[0], chain.base));
        }
        for r in 1..=self.k() {
            let seg = chain.level(r);
            if !inside(self.alphas[r], seg) || !inside(self.beta(r), seg) {
                return fail(format!("level {r} points outside {seg:?}"));
            }
            if !(self.alphas[r] > self.alphas[r - 1]) {
                return fail(format!("alphas not increasing at r = {r}"));
            }
            if r > 1 && !(self.beta(r) > self.beta(r - 1)) {
                return fail(format!("betas not increasing at r = {r}"));
            }
            if z_value(self.alphas[r], cfg) == 0.0 || z_value(self.beta(r), cfg) == 0.0 {
                return fail(format!("extracted point at a zero of Z, level {r}"));
            }
        }
        Ok(())
    }
}

/// d, e and the point families on a chain.
pub fn extract_points(chain: &SegmentChain, kr: &EulerKernel, m: &LadderModel) -> Result<ExtractionResult> {
    require_quadrature(m)?;
    kr.validate()?;
    let seg = *chain.deepest();
    let k = chain.k;
    let j = closed_integral(kr, chain.l, chain.u)?;
    let scan_n = default_scan_n(&seg);

    let d = find_mvt_point(|t| Ok(chained_f(t, chain, kr, m)?.0), &seg, j / seg.len(), scan_n)?;
    let e = find_mvt_point(|t| Ok(pull_back(t, k, m)?.1), &seg, chain.u / seg.len(), scan_n)?;

    let iterates = |t: f64| -> Result<Vec<f64>> { (0..=k).map(|i| phi1_iter(t, i, m)).collect() };
    let d_it = iterates(d)?;
    let e_it = iterates(e)?;
    let alphas: Vec<f64> = (0..=k).map(|r| d_it[k - r]).collect();
    let betas: Vec<f64> = (1..=k).map(|r| e_it[k - r]).collect();

    let res = ExtractionResult {
        d,
        e,
        alphas,
        betas,
        tol: ROOT_TOL,
        j,
        seg_len: seg.len(),
        d_residual: chained_f(d, chain, kr, m)?.0 * seg.len() - j,
        e_residual: pull_back(e, k, m)?.1 * seg.len() - chain.u,
    };
    res.check_invariants(chain, &m.z_cfg(), 2.0 * m.tol)?;
    Ok(res)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    #[serde(rename = "L")]
    pub l: i64,
    #[serde(rename = "U")]
    pub u: f64,
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub method: String,
    pub tol: f64,
    pub root_tol: f64,
    pub lhs: f64,
    pub rhs_asym: f64,
    pub rhs_exact: f64,
    pub signal: f64,
    pub noise: f64,
    pub error_residual: f64,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub d: f64,
    pub e: f64,
    /// (α_{r+1} − α_r)/((1−c)π(2πL)), r = 0..k−1.
    pub spacing_ratios: Vec<f64>,
    /// (β_{r+1} − β_r)/((1−c)π(2πL)), r = 1..k−1.
    pub beta_spacing_ratios: Vec<f64>,
    pub omega_ratio: f64,
    /// The point with f(α)·U = J on the base, for contrast with α₀.
    pub base_mvt_point: f64,
    pub chain: SegmentChain,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl FactorizationReport {
    /// lhs / rhs_exact − 1.
    pub fn identity_error(&self) -> f64 {
        self.lhs / self.rhs_exact - 1.0
    }

    /// lhs / rhs_asym − 1.
    pub fn asymptotic_error(&self) -> f64 {
        self.lhs / self.rhs_asym - 1.0
    }
}

/// Minimum |Z(β_r)| accepted before the quotient is declared degenerate.
pub const DEGENERATE_Z: f64 = 1e-12;

pub fn factorization_report(
    res: &ExtractionResult,
    chain: &SegmentChain,
    kr: &EulerKernel,
    m: &LadderModel,
) -> Result<FactorizationReport> {
    let cfg = m.z_cfg();
    let mut lhs = 1.0;
    let mut omega_ratio = 1.0;
    for r in 1..=res.k() {
        let (za, zb) = (z_value(res.alphas[r], &cfg), z_value(res.beta(r), &cfg));
        if zb.abs() < DEGENERATE_Z {
            return Err(Error::Degenerate(format!(
                "|Z(beta_{r})| = {:.3e} at {}",
                zb.abs(),
                res.beta(r)
            )));
        }
        lhs *= (za / zb).powi(2);
        omega_ratio *= omega(res.alphas[r], m)? / omega(res.beta(r), m)?;
    }
    let big_a = arctan_factor(kr, chain.u)?;
    let alpha0 = res.alphas[0];
    let signal = signal_factor(kr, chain.u)?;
    let noise = kr.b / (kr.a + kr.b) * big_a * alpha0.cos();
    let rhs_asym = big_a * (kr.a + kr.b * alpha0.cos()) / (kr.a + kr.b);
    let spacing = spacing_check(res, chain)?;
    Ok(FactorizationReport {
        l: chain.l,
        u: chain.u,
        k: chain.k,
        a: kr.a,
        b: kr.b,
        method: METHOD.into(),
        tol: m.tol,
        root_tol: res.tol,
        lhs,
        rhs_asym,
        rhs_exact: rhs_asym * omega_ratio,
        signal,
        noise,
        error_residual: lhs - signal - noise,
        alphas: res.alphas.clone(),
        betas: res.betas.clone(),
        d: res.d,
        e: res.e,
        spacing_ratios: spacing.alpha,
        beta_spacing_ratios: spacing.beta,
        omega_ratio,
        base_mvt_point: base_mvt_point(kr, chain.l, chain.u)?,
        chain: chain.clone(),
        warnings: chain.warnings.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QFactor {
    pub alpha: f64,
    pub beta: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub value: f64,
    pub numerator_bound: f64,
    pub denominator_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSystemEvaluation {
    pub factors: Vec<QFactor>,
    pub product: f64,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Bound on |Z(t) − spectral sum at t|: the leading Riemann–Siegel
/// correction plus the phase dropped by the three-term θ.
pub fn remainder_bound(t: f64) -> Result<f64> {
    let a = t / (2.0 * PI);
    let tail = (theta(t)? - theta_main(t)).abs();
    let n = a.sqrt().floor() as usize;
    let amp: f64 = (1..=n).map(SpectralWindow::amplitude).sum();
    Ok(a.powf(-0.25) + tail * amp)
}

fn spectral_at(t: f64) -> Result<f64> {
    let w = SpectralWindow::new(t, QSYSTEM_WINDOW)?;
    spectral_z(t, &w)
}

/// One Q-system factor S(α)/S(β) from the spectral sums anchored at each
/// point.
pub fn qsystem_factor(alpha: f64, beta: f64) -> Result<QFactor> {
    let numerator = spectral_at(alpha)?;
    let denominator = spectral_at(beta)?;
    Ok(QFactor {
        alpha,
        beta,
        numerator,
        denominator,
        value: numerator / denominator,
        numerator_bound: remainder_bound(alpha)?,
        denominator_bound: remainder_bound(beta)?,
    })
}

/// Π_r S(α_r)/S(β_r); comparable in modulus with √lhs.
pub fn qsystem_lhs(res: &ExtractionResult, cfg: &RSEvalConfig) -> Result<QSystemEvaluation> {
    let mut factors = Vec::with_capacity(res.k());
    let mut warnings = Vec::new();
    for r in 1..=res.k() {
        let (a, b) = (res.alphas[r], res.beta(r));
        if a < cfg.t_switch || b < cfg.t_switch {
            return Err(Error::Domain(format!(
                "Q-system points must be >= t_switch = {}, got {a}, {b}",
                cfg.t_switch
            )));
        }
        let f = qsystem_factor(a, b)?;
        if f.denominator_bound > 0.1 * f.denominator.abs() {
            warnings.push(format!(
                "factor {r}: remainder bound {:.3e} exceeds 10% of denominator {:.3e}",
                f.denominator_bound, f.denominator
            ));
        }
        factors.push(f);
    }
    let product = factors.iter().map(|f| f.value).product();
    Ok(QSystemEvaluation {
        factors,
        product,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingRatios {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Neighbour gaps of α and β scaled by (1−c)π(2πL).
pub fn spacing_check(res: &ExtractionResult, chain: &SegmentChain) -> Result<SpacingRatios> {
    let scale = (1.0 - EULER_GAMMA) * prime_pi(chain.base.lo, PiMode::ExactSieve)? as f64;
    let ratios = |v: &[f64]| v.windows(2).map(|w| (w[1] - w[0]) / scale).collect();
    Ok(SpacingRatios {
        alpha: ratios(&res.alphas),
        beta: ratios(&res.betas),
    })
}
