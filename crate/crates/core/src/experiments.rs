//! End-to-end runs: the factorization theorem on one chain, its
//! signal/noise split, the distinctness scan over U, and the prime
//! complement of the ladder.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::euler_kernel::{arctan_factor, signal_factor, EulerKernel};
use crate::ladder::{phi1, reverse_chain, LadderModel, SegmentChain};
use crate::moment::{Backend, EULER_GAMMA};
use crate::special::{prime_pi, PiMode};
use crate::transform::{
    extract_points, factorization_report, qsystem_lhs, ExtractionResult, FactorizationReport, QSystemEvaluation,
    ROOT_TOL,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremInputs {
    #[serde(rename = "L")]
    pub l: i64,
    #[serde(rename = "U")]
    pub u: f64,
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub backend: Backend,
    pub tol: f64,
    pub root_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremRun {
    pub inputs: TheoremInputs,
    pub chain: SegmentChain,
    pub extraction: ExtractionResult,
    pub report: FactorizationReport,
    pub qsystem: QSystemEvaluation,
    pub elapsed_ms: u64,
}

/// chain → extraction → report → Q-system, errors labelled by stage.
pub fn run_theorem(l: i64, u: f64, k: usize, kr: &EulerKernel, m: &LadderModel) -> Result<TheoremRun> {
    let start = Instant::now();
    kr.validate()?;
    m.validate()?;
    let chain = reverse_chain(l, u, k, m).map_err(|e| e.at(Stage::Chain))?;
    let extraction = extract_points(&chain, kr, m).map_err(|e| e.at(Stage::Extraction))?;
    let report = factorization_report(&extraction, &chain, kr, m).map_err(|e| e.at(Stage::Report))?;
    let qsystem = qsystem_lhs(&extraction, &m.z_cfg()).map_err(|e| e.at(Stage::QSystem))?;
    Ok(TheoremRun {
        inputs: TheoremInputs {
            l,
            u,
            k,
            a: kr.a,
            b: kr.b,
            backend: m.backend,
            tol: m.tol,
            root_tol: ROOT_TOL,
        },
        chain,
        extraction,
        report,
        qsystem,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub signal: f64,
    pub noise: f64,
    pub error_residual: f64,
    /// (b/(a+b))·A(U), the largest possible |noise|.
    pub noise_amplitude: f64,
    /// ln ln(2πL)/ln(2πL).
    pub error_scale: f64,
    pub alpha0: f64,
}

pub fn decompose(run: &TheoremRun) -> Result<Decomposition> {
    let kr = EulerKernel::new(run.inputs.a, run.inputs.b)?;
    let x = run.chain.base.lo;
    let rep = &run.report;
    Ok(Decomposition {
        signal: rep.signal,
        noise: rep.noise,
        error_residual: rep.error_residual,
        noise_amplitude: kr.b.abs() / (kr.a + kr.b) * arctan_factor(&kr, run.inputs.u)?,
        error_scale: x.ln().ln() / x.ln(),
        alpha0: rep.alphas[0],
    })
}

/// Signal at U; has no L dependence.
pub fn stationary_signal(kr: &EulerKernel, u: f64) -> Result<f64> {
    signal_factor(kr, u)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinctScan {
    #[serde(rename = "L")]
    pub l: i64,
    pub k: usize,
    #[serde(rename = "U0")]
    pub u0: f64,
    pub delta: f64,
    pub grid: Vec<f64>,
    /// Per U: α₀..α_k followed by β₁..β_k.
    pub tuples: Vec<Vec<f64>>,
    /// Minimum over pairs of the max-norm distance.
    pub min_pairwise_gap: f64,
    /// Minimum over pairs and components of the coordinate distance.
    pub min_component_gap: f64,
}

impl DistinctScan {
    pub fn pair_count(&self) -> usize {
        let n = self.grid.len();
        n * n.saturating_sub(1) / 2
    }
}

/// n points strictly inside (U0 − δ, U0 + δ), cell-centred.
pub fn distinct_grid(u0: f64, delta: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(delta > 0.0) {
        return Err(Error::Parameter(format!(
            "distinct scan needs n >= 2 and delta > 0, got n = {n}, delta = {delta}"
        )));
    }
    let grid: Vec<f64> = (0..n)
        .map(|i| u0 - delta + 2.0 * delta * (i as f64 + 0.5) / n as f64)
        .collect();
    if !(grid[0] > 0.0 && grid[n - 1] < std::f64::consts::PI) {
        return Err(Error::Parameter("U must be in (0, pi)".into()));
    }
    Ok(grid)
}

pub fn distinct_scan(
    l: i64,
    k: usize,
    kr: &EulerKernel,
    m: &LadderModel,
    u0: f64,
    delta: f64,
    n_grid: usize,
) -> Result<DistinctScan> {
    let grid = distinct_grid(u0, delta, n_grid)?;
    let tuples = grid
        .par_iter()
        .map(|&u| {
            let chain = reverse_chain(l, u, k, m).map_err(|e| e.at(Stage::Chain))?;
            let res = extract_points(&chain, kr, m).map_err(|e| e.at(Stage::Extraction))?;
            Ok(res.alphas.iter().chain(&res.betas).copied().collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut max_norm = f64::INFINITY;
    let mut component = f64::INFINITY;
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let diffs = tuples[i].iter().zip(&tuples[j]).map(|(x, y)| (x - y).abs());
            let (lo, hi) = diffs.fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(d), hi.max(d)));
            max_norm = max_norm.min(hi);
            component = component.min(lo);
        }
    }
    Ok(DistinctScan {
        l,
        k,
        u0,
        delta,
        grid,
        tuples,
        min_pairwise_gap: max_norm,
        min_component_gap: component,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplementRow {
    #[serde(rename = "T")]
    pub t: f64,
    pub phi1: f64,
    /// T − φ₁(T), the scale of consecutive α gaps near T.
    pub gap: f64,
    pub pi: f64,
    /// gap / ((1−c)π(T)).
    pub ratio: f64,
    /// (φ₁(T) + (1−c)π(T)) / T.
    pub complement_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub backend: Backend,
    pub rows: Vec<ComplementRow>,
    /// Gaps grow with T across the sorted rows.
    pub dispersal_increasing: bool,
}

pub fn complement_report(ts: &[f64], m: &LadderModel) -> Result<ComplementReport> {
    let mut rows = ts
        .par_iter()
        .map(|&t| {
            let y = phi1(t, m)?;
            let pi = prime_pi(t, PiMode::ExactSieve)?;
            let scaled = (1.0 - EULER_GAMMA) * pi;
            Ok(ComplementRow {
                t,
                phi1: y,
                gap: t - y,
                pi,
                ratio: (t - y) / scaled,
                complement_sum: (y + scaled) / t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.t.total_cmp(&b.t));
    let dispersal_increasing = rows.windows(2).all(|w| w[1].gap > w[0].gap);
    Ok(ComplementReport {
        backend: m.backend,
        rows,
        dispersal_increasing,
    })
}
