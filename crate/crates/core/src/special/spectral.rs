use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local spectral form of Z anchored at `x_ref`: a finite bank of
/// oscillators (2/√n) cos(t ω_n + ψ) valid for t ∈ [x_ref, x_ref + V].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralWindow {
    pub x_ref: f64,
    pub v: f64,
    pub tau: f64,
    pub psi: f64,
    pub frequencies: Vec<f64>,
}

impl SpectralWindow {
    pub fn new(x_ref: f64, v: f64) -> Result<Self> {
        if !(x_ref > 2.0 * PI) {
            return Err(Error::Parameter(format!(
                "spectral window anchor must exceed 2π, got {x_ref}"
            )));
        }
        if !(v > 0.0 && v < x_ref.powf(0.25)) {
            return Err(Error::Parameter(format!(
                "window length V = {v} must lie in (0, x_ref^(1/4) = {})",
                x_ref.powf(0.25)
            )));
        }
        let tau = (x_ref / (2.0 * PI)).sqrt();
        let frequencies = (1..=tau.floor() as usize)
            .map(|n| (tau / n as f64).ln())
            .collect();
        Ok(Self {
            x_ref,
            v,
            tau,
            psi: -0.5 * x_ref - PI / 8.0,
            frequencies,
        })
    }

    /// Oscillator amplitude 2/√n (n counted from 1).
    pub fn amplitude(n: usize) -> f64 {
        2.0 / (n as f64).sqrt()
    }

    /// Single oscillator n (1-based) at local time t, without window check.
    pub fn oscillator(&self, n: usize, t: f64) -> f64 {
        Self::amplitude(n) * (t * self.frequencies[n - 1] + self.psi).cos()
    }

    /// Sum of all oscillators, no window check.
    pub fn sum_unchecked(&self, t: f64) -> f64 {
        self.frequencies
            .iter()
            .enumerate()
            .map(|(i, &w)| Self::amplitude(i + 1) * (t * w + self.psi).cos())
            .sum()
    }
}

/// Σ_{n ≤ τ} (2/√n) cos(t ω_n + ψ) for t inside the window.
pub fn spectral_z(t: f64, w: &SpectralWindow) -> Result<f64> {
    let hi = w.x_ref + w.v;
    if !(t >= w.x_ref && t <= hi) {
        return Err(Error::Window {
            t,
            lo: w.x_ref,
            hi,
        });
    }
    Ok(w.sum_unchecked(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequencies_decrease_and_are_nonnegative() {
        let w = SpectralWindow::new(1e4, 5.0).unwrap();
        assert_eq!(w.frequencies.len(), 39);
        assert!(w.frequencies.windows(2).all(|p| p[0] > p[1]));
        assert!(w.frequencies.iter().all(|&f| f >= 0.0));
    }

    #[test]
    fn first_amplitude_is_two() {
        assert_eq!(SpectralWindow::amplitude(1), 2.0);
    }

    #[test]
    fn window_bounds() {
        assert!(SpectralWindow::new(1e4, 10.0).is_err());
        assert!(SpectralWindow::new(1e4, 0.0).is_err());
        let w = SpectralWindow::new(1e4, 5.0).unwrap();
        assert!(matches!(spectral_z(1e4 - 0.1, &w), Err(Error::Window { .. })));
        assert!(matches!(spectral_z(1e4 + 5.1, &w), Err(Error::Window { .. })));
        assert!(spectral_z(1e4 + 5.0, &w).is_ok());
    }
}
