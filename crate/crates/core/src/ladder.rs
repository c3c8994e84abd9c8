//! Jacob's ladder φ₁ realized through the almost-exact second-moment
//! expression
//!
//! ```text
//! I(T) = F(φ₁(T)),   F(y) = y ln y + (c − ln 2π) y + c₀,
//! ```
//!
//! so φ₁ = F⁻¹ ∘ I. With ω(t) = F′(φ₁(t)) the derivative of the ladder is
//! exactly Z(t)² / ω(t) under the quadrature backend, which is what makes
//! the substitution identities of the transform pipeline hold pointwise.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moment::{hl_asymptotic, Backend, MomentCheckpointTable, EULER_GAMMA};
use crate::roots::newton_bisect;
use crate::special::{z_value, RSEvalConfig};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_T_MIN: f64 = 100.0;
/// Smallest admissible base point 2πL for segment chains.
pub const DEFAULT_PIPELINE_MIN: f64 = 1e3;
/// Below this base point chains are built but carry a warning.
pub const PIPELINE_WARN_BELOW: f64 = 1e4;
/// Depth cap for reversely iterated chains.
pub const MAX_DEPTH: usize = 3;

#[derive(Debug, Clone)]
pub struct LadderModel {
    pub backend: Backend,
    /// Euler's constant.
    pub c: f64,
    /// Titchmarsh–Kober–Atkinson constant.
    pub c0: f64,
    pub table: Option<Arc<MomentCheckpointTable>>,
    /// Inversion tolerance in t-units.
    pub tol: f64,
    pub t_min: f64,
    pub pipeline_min: f64,
}

impl LadderModel {
    pub fn quadrature(table: Arc<MomentCheckpointTable>) -> Self {
        Self {
            backend: Backend::Quadrature,
            c: EULER_GAMMA,
            c0: 0.0,
            table: Some(table),
            tol: DEFAULT_TOL,
            t_min: DEFAULT_T_MIN,
            pipeline_min: DEFAULT_PIPELINE_MIN,
        }
    }

    pub fn asymptotic() -> Self {
        Self {
            backend: Backend::Asymptotic,
            c: EULER_GAMMA,
            c0: 0.0,
            table: None,
            tol: DEFAULT_TOL,
            t_min: DEFAULT_T_MIN,
            pipeline_min: DEFAULT_PIPELINE_MIN,
        }
    }

    pub fn with_c0(mut self, c0: f64) -> Self {
        self.c0 = c0;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.577215 && self.c < 0.577216) {
            return Err(Error::Parameter(format!(
                "c must be Euler's constant, got {}",
                self.c
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Parameter(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.backend == Backend::Quadrature && self.table.is_none() {
            return Err(Error::Backend(
                "quadrature backend requires a checkpoint table".into(),
            ));
        }
        Ok(())
    }

    pub fn z_cfg(&self) -> RSEvalConfig {
        self.table.as_ref().map_or_else(RSEvalConfig::default, |t| t.z_cfg)
    }

    /// F(y) = y ln y + (c − ln 2π) y + c₀.
    pub fn f_moment(&self, y: f64) -> f64 {
        y * y.ln() + (self.c - (2.0 * PI).ln()) * y + self.c0
    }

    /// F′(y) = ln y + 1 + c − ln 2π.
    pub fn f_moment_prime(&self, y: f64) -> f64 {
        y.ln() + 1.0 + self.c - (2.0 * PI).ln()
    }

    /// I(t) and I′(t) through the model's backend.
    pub fn moment(&self, t: f64) -> Result<(f64, f64)> {
        match self.backend {
            Backend::Asymptotic => Ok((
                hl_asymptotic(t, self.c, self.c0),
                t.ln() + 2.0 * self.c - (2.0 * PI).ln(),
            )),
            Backend::Quadrature => {
                let table = self.table.as_ref().ok_or_else(|| {
                    Error::Backend("quadrature backend requires a checkpoint table".into())
                })?;
                let z = z_value(t, &table.z_cfg);
                Ok((table.integral(t)?, z * z))
            }
        }
    }

    fn residual_tol(&self, target: f64, slope: f64) -> f64 {
        let ulp = target.abs() * f64::EPSILON;
        (0.01 * self.tol * slope).max(8.0 * ulp)
    }

    /// F⁻¹(value): the y > 2 with F(y) = value.
    pub fn invert_f(&self, value: f64) -> Result<f64> {
        let lo = 2.0;
        if self.f_moment(lo) > value {
            return Err(Error::Domain(format!(
                "moment value {value} below the increasing branch of F"
            )));
        }
        let mut hi = (value / value.ln().max(1.0)).max(4.0);
        while self.f_moment(hi) < value {
            hi *= 2.0;
        }
        let guess = value / (value.ln() - 1.0).max(1.0);
        let f_tol = self.residual_tol(value, self.f_moment_prime(guess.max(lo)));
        newton_bisect(
            |y| Ok((self.f_moment(y) - value, self.f_moment_prime(y))),
            lo,
            hi,
            guess,
            1e-3 * self.tol,
            f_tol,
        )
    }

    fn check_t_min(&self, t: f64, what: &str) -> Result<()> {
        if !(t >= self.t_min) {
            return Err(Error::Domain(format!(
                "{what} requires t >= T_min = {}, got {t}",
                self.t_min
            )));
        }
        Ok(())
    }
}

/// φ₁(T), the root y of F(y) = I(T).
pub fn phi1(t: f64, m: &LadderModel) -> Result<f64> {
    m.check_t_min(t, "phi1")?;
    let (value, _) = m.moment(t)?;
    m.invert_f(value)
}

/// ω(t) = F′(φ₁(t)) = ln φ₁(t) + 1 + c − ln 2π.
pub fn omega(t: f64, m: &LadderModel) -> Result<f64> {
    Ok(m.f_moment_prime(phi1(t, m)?))
}

/// Z̃²(t) = Z(t)² / ω(t), the derivative of φ₁ under the quadrature backend.
pub fn tilde_z_sq(t: f64, m: &LadderModel) -> Result<f64> {
    if m.backend != Backend::Quadrature {
        return Err(Error::Backend(
            "tilde_z_sq is the ladder derivative only under the quadrature backend".into(),
        ));
    }
    let z = z_value(t, &m.z_cfg());
    Ok(z * z / omega(t, m)?)
}

/// φ₁ and Z̃² together, sharing the single moment evaluation.
pub fn phi1_with_weight(t: f64, m: &LadderModel) -> Result<(f64, f64)> {
    if m.backend != Backend::Quadrature {
        return Err(Error::Backend(
            "ladder weight requires the quadrature backend".into(),
        ));
    }
    m.check_t_min(t, "phi1")?;
    let (value, z2) = m.moment(t)?;
    let y = m.invert_f(value)?;
    Ok((y, z2 / m.f_moment_prime(y)))
}

/// The t with φ₁(t) = x.
pub fn phi1_inverse(x: f64, m: &LadderModel) -> Result<f64> {
    let floor = phi1(m.t_min, m)?;
    if !(x >= floor) {
        return Err(Error::Domain(format!(
            "phi1_inverse requires x >= phi1(T_min) = {floor}, got {x}"
        )));
    }
    let target = m.f_moment(x);
    let limit = match m.backend {
        Backend::Quadrature => m.table.as_ref().map_or(f64::INFINITY, |t| t.t_max()),
        Backend::Asymptotic => f64::INFINITY,
    };
    let gap = (1.0 - m.c) * x / (x.ln() + 1.0 + m.c - (2.0 * PI).ln()).max(1.0);
    let lo = x.max(m.t_min);
    let mut hi = x + 2.0 * gap + 50.0;
    loop {
        if hi > limit {
            hi = limit;
        }
        let (value, _) = m.moment(hi)?;
        if value >= target {
            break;
        }
        if hi >= limit {
            return Err(Error::Resource(format!(
                "phi1_inverse({x}) needs t beyond the moment table range {limit}"
            )));
        }
        hi = x + 2.0 * (hi - x);
    }
    let f_tol = m.residual_tol(target, m.f_moment_prime(x));
    newton_bisect(
        |t| {
            let (value, slope) = m.moment(t)?;
            Ok((value - target, slope))
        },
        lo,
        hi,
        (x + gap).min(hi),
        1e-3 * m.tol,
        f_tol,
    )
}

/// φ₁^j(t); j = 0 is the identity.
pub fn phi1_iter(t: f64, j: usize, m: &LadderModel) -> Result<f64> {
    let mut x = t;
    for _ in 0..j {
        if x < m.t_min {
            return Err(Error::Domain(format!(
                "ladder iterate {x} dropped below T_min = {}",
                m.t_min
            )));
        }
        x = phi1(x, m)?;
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Parameter(format!("segment needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }

    pub fn contains_open(&self, t: f64) -> bool {
        t > self.lo && t < self.hi
    }
}

/// Base interval [2πL, 2πL + U] with its preimages seg¹..seg^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentChain {
    pub base: Segment,
    pub levels: Vec<Segment>,
    #[serde(rename = "L")]
    pub l: i64,
    #[serde(rename = "U")]
    pub u: f64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SegmentChain {
    /// seg^r with seg⁰ the base.
    pub fn level(&self, r: usize) -> &Segment {
        if r == 0 {
            &self.base
        } else {
            &self.levels[r - 1]
        }
    }

    pub fn deepest(&self) -> &Segment {
        self.level(self.k)
    }

    /// Endpoint mapping within `tol` and strict disjoint ordering.
    pub fn check_invariants(&self, m: &LadderModel) -> Result<()> {
        for r in 1..=self.k {
            let (prev, cur) = (self.level(r - 1), self.level(r));
            if !(cur.lo > prev.hi) {
                return Err(Error::Convergence(format!(
                    "level {r} [{}, {}] not to the right of level {} ending at {}",
                    cur.lo,
                    cur.hi,
                    r - 1,
                    prev.hi
                )));
            }
            for (end, img) in [(cur.lo, prev.lo), (cur.hi, prev.hi)] {
                let mapped = phi1(end, m)?;
                if (mapped - img).abs() > 2.0 * m.tol {
                    return Err(Error::Convergence(format!(
                        "phi1({end}) = {mapped} misses {img} at level {r}"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn check_u(u: f64) -> Result<()> {
    if !(u > 0.0 && u < PI) {
        return Err(Error::Parameter("U must be in (0, pi)".into()));
    }
    Ok(())
}

/// Reversely iterated segments of [2πL, 2πL + U] down to depth k.
pub fn reverse_chain(l: i64, u: f64, k: usize, m: &LadderModel) -> Result<SegmentChain> {
    check_u(u)?;
    if k == 0 || k > MAX_DEPTH {
        return Err(Error::Parameter(format!("k must be in 1..={MAX_DEPTH}, got {k}")));
    }
    let lo = 2.0 * PI * l as f64;
    if !(lo >= m.pipeline_min) {
        return Err(Error::Domain(format!(
            "2*pi*L = {lo} below the pipeline minimum {}",
            m.pipeline_min
        )));
    }
    let mut warnings = Vec::new();
    if lo < PIPELINE_WARN_BELOW {
        warnings.push(format!(
            "2*pi*L = {lo:.1} is below {PIPELINE_WARN_BELOW}; asymptotic statements are weakly resolved"
        ));
    }
    let base = Segment::new(lo, lo + u)?;
    let mut levels = Vec::with_capacity(k);
    let mut prev = base;
    for _ in 0..k {
        let seg = Segment::new(phi1_inverse(prev.lo, m)?, phi1_inverse(prev.hi, m)?)?;
        levels.push(seg);
        prev = seg;
    }
    let chain = SegmentChain {
        base,
        levels,
        l,
        u,
        k,
        warnings,
    };
    chain.check_invariants(m)?;
    Ok(chain)
}
