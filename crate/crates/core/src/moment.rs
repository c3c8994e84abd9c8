//! Hardy–Littlewood second moment I(T) = ∫₀ᵀ Z(t)² dt.
//!
//! The quadrature backend integrates Z² over panels a fixed fraction of
//! the local zero spacing 2π / ln(t/2π) wide, cut additionally at the
//! Riemann–Siegel term boundaries 2πn² and at the Euler–Maclaurin switch.
//! Cumulative values are stored on a unit grid in a
//! [`MomentCheckpointTable`]; a query adds one local top-up integral from
//! the nearest node below.

use std::f64::consts::PI;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_panel, KahanSum};
use crate::special::{rs_breakpoints, z_value, RSEvalConfig};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub const CHECKPOINT_HEADER: &str = "ZLADDER-CKPT v1";

pub const DEFAULT_T_MAX: f64 = 5e4;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Panel width as a fraction of the local zero spacing; with 15 Kronrod
/// nodes per panel this gives 60 nodes per expected oscillation.
pub const DEFAULT_PANEL_FRACTION: f64 = 0.25;
pub const DEFAULT_NODE_STEP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Quadrature,
    Asymptotic,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrature" => Ok(Backend::Quadrature),
            "asymptotic" => Ok(Backend::Asymptotic),
            other => Err(Error::Parameter(format!(
                "backend must be quadrature or asymptotic, got {other}"
            ))),
        }
    }
}

/// Local zero spacing 2π / ln(t/2π), floored for small t.
pub fn zero_spacing(t: f64) -> f64 {
    2.0 * PI / (t / (2.0 * PI)).ln().max(1.0)
}

/// Mean of Z² near t, used to scale absolute error budgets.
fn z2_scale(t: f64) -> f64 {
    (t / (2.0 * PI)).ln().max(1.0)
}

/// Panel breakpoints covering `[a, b]`.
pub fn panel_breaks(a: f64, b: f64, fraction: f64, cfg: &RSEvalConfig) -> Vec<f64> {
    let mut cuts = vec![a];
    cuts.extend(rs_breakpoints(a, b));
    if cfg.t_switch > a && cfg.t_switch < b {
        cuts.push(cfg.t_switch);
    }
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);

    let mut breaks = vec![a];
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let h = fraction * zero_spacing(hi);
        let n = ((hi - lo) / h).ceil().max(1.0) as usize;
        let step = (hi - lo) / n as f64;
        for i in 1..n {
            breaks.push(lo + step * i as f64);
        }
        breaks.push(hi);
    }
    breaks
}

/// ∫ₐᵇ Z² dt by panel quadrature, relative tolerance `tol`.
pub fn integrate_z2(a: f64, b: f64, cfg: &RSEvalConfig, tol: f64) -> Result<f64> {
    integrate_z2_with(a, b, cfg, tol, DEFAULT_PANEL_FRACTION)
}

pub fn integrate_z2_with(a: f64, b: f64, cfg: &RSEvalConfig, tol: f64, fraction: f64) -> Result<f64> {
    if b < a {
        return integrate_z2_with(b, a, cfg, tol, fraction).map(|v| -v);
    }
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("moment integral needs t >= 0, got {a}")));
    }
    let f = |t: f64| {
        let z = z_value(t, cfg);
        z * z
    };
    let mut sum = KahanSum::default();
    for w in panel_breaks(a, b, fraction, cfg).windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let budget = tol * z2_scale(mid) * (w[1] - w[0]);
        sum.add(adaptive_panel(&f, w[0], w[1], budget)?.value);
    }
    Ok(sum.total())
}

/// T ln T + (2c − 1 − ln 2π) T + c₀.
pub fn hl_asymptotic(t: f64, c: f64, c0: f64) -> f64 {
    if t == 0.0 {
        return c0;
    }
    t * t.ln() + (2.0 * c - 1.0 - (2.0 * PI).ln()) * t + c0
}

/// Cumulative second moment on a grid, with the settings it was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCheckpointTable {
    pub version: String,
    pub grid: Vec<(f64, f64)>,
    pub panel_fraction: f64,
    pub tol: f64,
    pub z_cfg: RSEvalConfig,
}

impl MomentCheckpointTable {
    pub fn t_max(&self) -> f64 {
        self.grid.last().map_or(0.0, |p| p.0)
    }

    pub fn panel_width_rule(&self) -> String {
        format!(
            "{} x 2pi/ln(t/2pi), cut at 2pi n^2 and t_switch",
            self.panel_fraction
        )
    }

    /// I(T) from the nearest node at or below T plus one top-up integral.
    pub fn integral(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("I(T) requires T >= 0, got {t}")));
        }
        if t > self.t_max() {
            return Err(Error::Resource(format!(
                "T = {t} beyond checkpoint table range {}",
                self.t_max()
            )));
        }
        let idx = self.grid.partition_point(|p| p.0 <= t) - 1;
        let (t0, i0) = self.grid[idx];
        if t == t0 {
            return Ok(i0);
        }
        Ok(i0 + integrate_z2_with(t0, t, &self.z_cfg, self.tol, self.panel_fraction)?)
    }

    pub fn validate(&self) -> Result<()> {
        match self.grid.first() {
            Some(&(0.0, 0.0)) => {}
            other => {
                return Err(Error::Format(format!(
                    "first checkpoint must be (0, 0), got {other:?}"
                )))
            }
        }
        for w in self.grid.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::Format(format!(
                    "checkpoints not strictly increasing at T = {}",
                    w[1].0
                )));
            }
        }
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CHECKPOINT_HEADER}")?;
        writeln!(
            out,
            "# panel_fraction={} tol={:e} t_switch={} n_corrections={} em_order={}",
            self.panel_fraction, self.tol, self.z_cfg.t_switch, self.z_cfg.n_corrections, self.z_cfg.em_order
        )?;
        for &(t, i) in &self.grid {
            writeln!(out, "{t:.16e},{i:.16e}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == CHECKPOINT_HEADER => {}
            Some(Ok(h)) => return Err(Error::Format(format!("bad header {h:?}"))),
            Some(Err(e)) => return Err(e.into()),
            None => return Err(Error::Format("empty checkpoint file".into())),
        }
        let mut table = MomentCheckpointTable {
            version: CHECKPOINT_HEADER.to_string(),
            grid: Vec::new(),
            panel_fraction: DEFAULT_PANEL_FRACTION,
            tol: DEFAULT_TOL,
            z_cfg: RSEvalConfig::default(),
        };
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                table.apply_meta(meta)?;
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("line {}: expected T,I", lineno + 2)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Format(format!("line {}: {e}", lineno + 2)))
            };
            table.grid.push((parse(a)?, parse(b)?));
        }
        table.validate()?;
        Ok(table)
    }

    fn apply_meta(&mut self, meta: &str) -> Result<()> {
        for kv in meta.split_whitespace() {
            let Some((k, v)) = kv.split_once('=') else {
                continue;
            };
            let bad = || Error::Format(format!("bad metadata entry {kv}"));
            match k {
                "panel_fraction" => self.panel_fraction = v.parse().map_err(|_| bad())?,
                "tol" => self.tol = v.parse().map_err(|_| bad())?,
                "t_switch" => self.z_cfg.t_switch = v.parse().map_err(|_| bad())?,
                "n_corrections" => self.z_cfg.n_corrections = v.parse().map_err(|_| bad())?,
                "em_order" => self.z_cfg.em_order = v.parse().map_err(|_| bad())?,
                _ => {}
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut out = BufWriter::new(fs::File::create(&tmp)?);
            self.write_to(&mut out)?;
            out.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(BufReader::new(fs::File::open(path)?))
    }

    /// Loads a cached table that covers `t_max` with matching settings,
    /// otherwise builds one and stores it at `path`.
    pub fn load_or_build(path: &Path, t_max: f64, tol: f64, z_cfg: &RSEvalConfig) -> Result<Self> {
        if let Ok(table) = Self::load(path) {
            if table.t_max() >= t_max && table.tol <= tol && table.z_cfg == *z_cfg {
                return Ok(table);
            }
        }
        let table = build_checkpoints_with(t_max, tol, z_cfg)?;
        table.save(path)?;
        Ok(table)
    }
}

/// Cache file name encoding the build settings.
pub fn cache_file_name(t_max: f64, tol: f64, z_cfg: &RSEvalConfig) -> String {
    format!(
        "moment-T{}-tol{:e}-sw{}-rs{}-em{}.ckpt",
        t_max, tol, z_cfg.t_switch, z_cfg.n_corrections, z_cfg.em_order
    )
}

/// `ZLADDER_CACHE_DIR` if set, else `explicit`, else the user cache dir.
pub fn resolve_cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = std::env::var_os("ZLADDER_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("zladder");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("zladder");
    }
    std::env::temp_dir().join("zladder")
}

pub fn build_checkpoints(t_max: f64, tol: f64) -> Result<MomentCheckpointTable> {
    build_checkpoints_with(t_max, tol, &RSEvalConfig::default())
}

pub fn build_checkpoints_with(t_max: f64, tol: f64, z_cfg: &RSEvalConfig) -> Result<MomentCheckpointTable> {
    if !(t_max > 0.0) || !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "build_checkpoints needs T_max > 0 and tol > 0, got {t_max}, {tol}"
        )));
    }
    z_cfg.validate()?;
    let n = (t_max / DEFAULT_NODE_STEP).ceil() as usize;
    let nodes: Vec<f64> = (0..=n).map(|i| i as f64 * DEFAULT_NODE_STEP).collect();
    let cells: Vec<f64> = nodes
        .par_windows(2)
        .map(|w| integrate_z2_with(w[0], w[1], z_cfg, tol, DEFAULT_PANEL_FRACTION))
        .collect::<Result<_>>()?;
    let mut grid = Vec::with_capacity(nodes.len());
    grid.push((0.0, 0.0));
    let mut acc = KahanSum::default();
    for (cell, &t) in cells.iter().zip(&nodes[1..]) {
        acc.add(*cell);
        grid.push((t, acc.total()));
    }
    let table = MomentCheckpointTable {
        version: CHECKPOINT_HEADER.to_string(),
        grid,
        panel_fraction: DEFAULT_PANEL_FRACTION,
        tol,
        z_cfg: *z_cfg,
    };
    table.validate()?;
    Ok(table)
}

/// I(T) through the chosen backend. The quadrature backend needs a table.
pub fn hl_integral(t: f64, backend: Backend, table: Option<&MomentCheckpointTable>, c0: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("I(T) requires T >= 0, got {t}")));
    }
    match backend {
        Backend::Asymptotic => Ok(hl_asymptotic(t, EULER_GAMMA, c0)),
        Backend::Quadrature => table
            .ok_or_else(|| Error::Backend("quadrature backend requires a checkpoint table".into()))?
            .integral(t),
    }
}
