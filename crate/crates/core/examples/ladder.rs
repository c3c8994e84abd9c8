//! Jacob's ladder φ₁ from the checkpoint table: values, the weight
//! Z̃² = dφ₁/dt, inverse images and a reversely iterated chain.
//!
//! ```bash
//! cargo run --release -p zladder --example ladder -- 1592 1.0 3
//! ```

use std::f64::consts::PI;
use std::sync::Arc;

use zladder::ladder::{omega, phi1, phi1_inverse, reverse_chain, tilde_z_sq, LadderModel};
use zladder::moment::{cache_file_name, resolve_cache_dir, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

fn main() -> zladder::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(1592);
    let u: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let k: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);

    let cfg = RSEvalConfig::default();
    let path = resolve_cache_dir(None).join(cache_file_name(5e4, DEFAULT_TOL, &cfg));
    let m = LadderModel::quadrature(Arc::new(MomentCheckpointTable::load_or_build(&path, 5e4, DEFAULT_TOL, &cfg)?));
    let asym = LadderModel::asymptotic();

    println!("{:>8} {:>16} {:>16} {:>10} {:>12} {:>16}", "T", "phi1", "phi1 (asym)", "omega", "Ztilde^2", "inverse");
    for t in [1_000.0, 5_000.0, 10_000.0, 20_000.0] {
        println!(
            "{t:>8} {:>16.6} {:>16.6} {:>10.6} {:>12.6} {:>16.6}",
            phi1(t, &m)?,
            phi1(t, &asym)?,
            omega(t, &m)?,
            tilde_z_sq(t, &m)?,
            phi1_inverse(t, &m)?
        );
    }

    let chain = reverse_chain(l, u, k, &m)?;
    println!("\nchain for 2piL = {:.3}, U = {u}, k = {k}:", 2.0 * PI * l as f64);
    for r in 0..=k {
        let s = chain.level(r);
        println!("  seg^{r}: [{:.9}, {:.9}]  length {:.6}", s.lo, s.hi, s.len());
    }
    for w in &chain.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
