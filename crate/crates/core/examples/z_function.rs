//! Hardy's Z on both evaluator routes, the θ phase, |χ| on the critical
//! line, the first few zeros and the local spectral form near t = 10⁴.
//!
//! ```bash
//! cargo run --release -p zladder --example z_function
//! ```

use zladder::roots::bisect;
use zladder::special::{chi_mod, spectral_z, theta, z_em, z_eval, z_rs, z_value, RSEvalConfig, SpectralWindow};

fn main() -> zladder::Result<()> {
    let cfg = RSEvalConfig::default();

    println!("{:>8} {:>14} {:>16} {:>12} {:>10}", "t", "theta", "Z", "err est", "|chi|-1");
    for t in [10.0, 100.0, 1_000.0, 10_000.0] {
        let z = z_eval(t, &cfg)?;
        println!(
            "{t:>8} {:>14.8} {:>16.12} {:>12.2e} {:>10.1e}",
            theta(t)?,
            z.value,
            z.error_estimate,
            chi_mod(t)? - 1.0
        );
    }

    println!("\nRiemann-Siegel against Euler-Maclaurin:");
    for t in [150.0, 500.0, 1500.0] {
        println!("  t = {t:>6}: RS {:+.10}  EM {:+.10}", z_rs(t, 2), z_em(t, 12));
    }

    let z = |t: f64| Ok(z_value(t, &cfg));
    let mut zeros = Vec::new();
    let mut t = 10.0;
    while zeros.len() < 5 {
        if z_value(t, &cfg).signum() != z_value(t + 0.05, &cfg).signum() {
            zeros.push(bisect(z, t, t + 0.05, 1e-12)?);
        }
        t += 0.05;
    }
    println!("\nfirst zeros: {zeros:.9?}");

    let w = SpectralWindow::new(1e4, 5.0)?;
    println!("\nspectral form on [1e4, 1e4 + 5] with {} oscillators:", w.frequencies.len());
    for i in 0..=5 {
        let t = 1e4 + i as f64;
        println!("  t = {t}: spectral {:+.6}  Z {:+.6}", spectral_z(t, &w)?, z_value(t, &cfg));
    }
    Ok(())
}
