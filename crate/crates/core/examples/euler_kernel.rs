//! The Euler integral of 1/(a + b cos φ) over [2πL, 2πL + U]: closed form
//! against quadrature, the signal factor and the base mean-value point.
//!
//! ```bash
//! cargo run --release -p zladder --example euler_kernel -- 2 1
//! ```

use zladder::euler_kernel::{base_mvt_point, closed_integral, quad_integral, signal_factor, EulerKernel};

fn main() -> zladder::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (a, b) = (args.first().copied().unwrap_or(2.0), args.get(1).copied().unwrap_or(1.0));
    let kr = EulerKernel::new(a, b)?;
    let l = 1600;

    println!("kernel a = {a}, b = {b}, L = {l}");
    println!("{:>6} {:>20} {:>12} {:>12} {:>14}", "U", "J", "rel diff", "g(U)", "alpha - 2piL");
    for i in 1..=12 {
        let u = 0.25 * i as f64;
        let j = closed_integral(&kr, l, u)?;
        let q = quad_integral(&kr, l, u, 1e-13)?;
        let alpha = base_mvt_point(&kr, l, u)?;
        println!(
            "{u:>6.2} {j:>20.15} {:>12.1e} {:>12.8} {:>14.10}",
            (j - q) / j,
            signal_factor(&kr, u)?,
            alpha - 2.0 * std::f64::consts::PI * l as f64
        );
    }
    Ok(())
}
