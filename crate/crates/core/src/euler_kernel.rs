//! The kernel f(φ) = 1/(a + b cos φ) and its integral over [2πL, 2πL + U].
//!
//! For 0 < U < π and a > |b|
//!
//! ```text
//! J = ∫ dφ / (a + b cos φ) = U/(a+b) · A(U),
//! A(U) = arctan(s tan(U/2)) / (s U/2),   s = √((a−b)/(a+b)).
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerKernel {
    pub a: f64,
    pub b: f64,
}

impl EulerKernel {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let k = Self { a, b };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a > self.b.abs()) {
            return Err(Error::Parameter(format!(
                "kernel needs a > |b|, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    fn s(&self) -> f64 {
        ((self.a - self.b) / (self.a + self.b)).sqrt()
    }
}

fn check_u(u: f64) -> Result<()> {
    if !(u > 0.0 && u < PI) {
        return Err(Error::Domain("U must be in (0, pi)".into()));
    }
    Ok(())
}

fn base_lo(l: i64) -> f64 {
    2.0 * PI * l as f64
}

pub fn kernel_eval(kr: &EulerKernel, phi: f64) -> f64 {
    1.0 / (kr.a + kr.b * phi.cos())
}

/// A(U) = arctan(s tan(U/2)) / (s U/2); tends to 1 as U → 0 or b → 0.
pub fn arctan_factor(kr: &EulerKernel, u: f64) -> Result<f64> {
    kr.validate()?;
    check_u(u)?;
    let x = kr.s() * (0.5 * u).tan();
    let half = 0.5 * u * kr.s();
    Ok(x.atan() / half)
}

/// J = ∫_{2πL}^{2πL+U} f. Independent of L.
pub fn closed_integral(kr: &EulerKernel, _l: i64, u: f64) -> Result<f64> {
    Ok(u / (kr.a + kr.b) * arctan_factor(kr, u)?)
}

/// Adaptive quadrature of the kernel over [2πL, 2πL + U].
pub fn quad_integral(kr: &EulerKernel, l: i64, u: f64, tol: f64) -> Result<f64> {
    kr.validate()?;
    check_u(u)?;
    let lo = base_lo(l);
    let f = |phi: f64| kernel_eval(kr, phi);
    let scale = 1.0 / (kr.a - kr.b.abs());
    Ok(integrate(&f, lo, lo + u, 8, tol, scale)?.value)
}

/// g(U) = a/(a+b) · A(U).
pub fn signal_factor(kr: &EulerKernel, u: f64) -> Result<f64> {
    Ok(kr.a / (kr.a + kr.b) * arctan_factor(kr, u)?)
}

/// The α ∈ (2πL, 2πL + U) with f(α)·U = J. Midpoint when b = 0.
pub fn base_mvt_point(kr: &EulerKernel, l: i64, u: f64) -> Result<f64> {
    let j = closed_integral(kr, l, u)?;
    let lo = base_lo(l);
    if kr.b == 0.0 {
        return Ok(lo + 0.5 * u);
    }
    let cos_alpha = ((u / j - kr.a) / kr.b).clamp(-1.0, 1.0);
    Ok(lo + cos_alpha.acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        let k = EulerKernel::new(2.0, 1.0).unwrap();
        assert!((kernel_eval(&k, 0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((kernel_eval(&k, PI) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_kernel_and_u() {
        assert!(EulerKernel::new(1.0, 1.0).is_err());
        assert!(EulerKernel::new(1.0, -2.0).is_err());
        let k = EulerKernel::new(2.0, 1.0).unwrap();
        assert!(matches!(closed_integral(&k, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(closed_integral(&k, 0, PI), Err(Error::Domain(_))));
        let bad = EulerKernel { a: 1.0, b: 3.0 };
        assert!(matches!(closed_integral(&bad, 0, 1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn constant_kernel() {
        let k = EulerKernel::new(2.5, 0.0).unwrap();
        assert!((closed_integral(&k, 3, 1.2).unwrap() - 1.2 / 2.5).abs() < 1e-15);
        assert!((signal_factor(&k, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(base_mvt_point(&k, 0, 1.0).unwrap(), 0.5);
    }

    #[test]
    fn small_u_limit() {
        let k = EulerKernel::new(2.0, 1.0).unwrap();
        let u = 1e-6;
        assert!((closed_integral(&k, 0, u).unwrap() / u - 1.0 / 3.0).abs() < 1e-9);
    }
}
