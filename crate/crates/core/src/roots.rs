//! Bracketed root finding for monotone functions and leftmost crossings.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Solves `f(x) = 0` for an increasing `f` on `[lo, hi]` by Newton steps,
/// falling back to bisection whenever a step leaves the bracket or the
/// derivative vanishes. `fdf` returns `(f(x), f'(x))`.
///
/// Terminates when the residual is at most `f_tol`, a Newton step is
/// shorter than `x_tol`, or the bracket is narrower than `x_tol` or can
/// no longer be split in floating point.
pub fn newton_bisect<F>(fdf: F, mut lo: f64, mut hi: f64, x0: f64, x_tol: f64, f_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (flo, _) = fdf(lo)?;
    if flo > 0.0 {
        return Err(Error::Convergence(format!(
            "bracket [{lo}, {hi}] does not contain a root: f(lo) = {flo}"
        )));
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    let (fhi, _) = fdf(hi)?;
    if fhi < 0.0 {
        return Err(Error::Convergence(format!(
            "bracket [{lo}, {hi}] does not contain a root: f(hi) = {fhi}"
        )));
    }
    if fhi == 0.0 {
        return Ok(hi);
    }

    let mut x = if x0 > lo && x0 < hi { x0 } else { 0.5 * (lo + hi) };
    for _ in 0..MAX_ITER {
        let (fx, dfx) = fdf(x)?;
        if fx.abs() <= f_tol {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let next = if dfx > 0.0 { x - fx / dfx } else { f64::NAN };
        if next.is_finite() && next > lo && next < hi {
            if (next - x).abs() <= x_tol {
                return Ok(next);
            }
            x = next;
        } else {
            x = mid;
        }
    }
    Err(Error::Convergence(format!(
        "no convergence after {MAX_ITER} iterations in [{lo}, {hi}]"
    )))
}

/// Bisection to `x_tol` for a sign change of `g` on `[lo, hi]`.
pub fn bisect<G>(g: G, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let glo = g(lo)?;
    let ghi = g(hi)?;
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    let sign_lo = glo.signum();
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Leftmost point where `g` meets `target` on `[lo, hi]`.
///
/// A uniform scan of `scan_n` intervals locates the first sample pair that
/// brackets the target, then bisection refines it. If no bracket shows up
/// the scan is doubled, up to `refine_cap` times the initial resolution.
/// A function equal to the target at `lo` returns `lo`.
pub fn leftmost_crossing<G>(
    g: G,
    lo: f64,
    hi: f64,
    target: f64,
    scan_n: usize,
    refine_cap: usize,
    x_tol: f64,
) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let mut n = scan_n.max(1);
    let cap = scan_n.max(1) * refine_cap.max(1);
    loop {
        let h = (hi - lo) / n as f64;
        let node = |i: usize| if i == n { hi } else { lo + h * i as f64 };
        let mut prev = g(lo)? - target;
        if prev == 0.0 {
            return Ok(lo);
        }
        for i in 1..=n {
            let x = node(i);
            let cur = g(x)? - target;
            if cur == 0.0 {
                return Ok(x);
            }
            if cur.signum() != prev.signum() {
                return bisect(|t| Ok(g(t)? - target), node(i - 1), x, x_tol);
            }
            prev = cur;
        }
        if n >= cap {
            return Err(Error::NoCrossing { target, lo, hi });
        }
        n *= 2;
    }
}
