use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2k} / (2k (2k-1)) for k = 1..=10, the Stirling series coefficients.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_RADIUS: f64 = 15.0;

/// Principal branch of log Γ(z) for Re z > 0, continuous in z.
///
/// Stirling's series after an upward shift `z -> z + n` until `|z + n|` is
/// large enough; the shift is undone with principal logarithms, which are
/// analytic on the right half-plane, so no 2πi jumps are introduced.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        tail += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + tail - shift
}

/// Riemann–Siegel theta through log Γ, valid for every t ≥ 0.
pub(crate) fn theta_lngamma(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

const CHI_T_MAX: f64 = 1e8;

/// |χ(1/2 + it)| with χ(s) = π^{s-1/2} Γ((1-s)/2) / Γ(s/2).
pub fn chi_mod(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("chi_mod requires t >= 0, got {t}")));
    }
    if t > CHI_T_MAX {
        return Err(Error::Domain(format!(
            "chi_mod overflow guard: t = {t} exceeds {CHI_T_MAX}"
        )));
    }
    let s = Complex64::new(0.5, t);
    let log_chi = (s - 0.5) * PI.ln() + ln_gamma((1.0 - s) * 0.5) - ln_gamma(s * 0.5);
    Ok(log_chi.re.exp())
}
