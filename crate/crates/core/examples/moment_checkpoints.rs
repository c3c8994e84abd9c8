//! Builds (or reloads) the second-moment checkpoint table and compares the
//! quadrature and asymptotic backends at a few heights.
//!
//! ```bash
//! cargo run --release -p zladder --example moment_checkpoints -- 50000
//! ```

use std::time::Instant;

use zladder::moment::{cache_file_name, hl_integral, resolve_cache_dir, Backend, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

fn main() -> zladder::Result<()> {
    let t_max: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000.0);
    let cfg = RSEvalConfig::default();
    let path = resolve_cache_dir(None).join(cache_file_name(t_max, DEFAULT_TOL, &cfg));

    let start = Instant::now();
    let table = MomentCheckpointTable::load_or_build(&path, t_max, DEFAULT_TOL, &cfg)?;
    println!(
        "table: {} nodes up to T = {} ({:.2?}), {}",
        table.grid.len(),
        table.t_max(),
        start.elapsed(),
        path.display()
    );

    println!("{:>10} {:>18} {:>18} {:>10}", "T", "quadrature", "asymptotic", "rel diff");
    for t in [100.0, 1_000.0, 5_000.0, 10_000.0, 50_000.0] {
        if t > table.t_max() {
            break;
        }
        let q = hl_integral(t, Backend::Quadrature, Some(&table), 0.0)?;
        let a = hl_integral(t, Backend::Asymptotic, None, 0.0)?;
        println!("{t:>10} {q:>18.6} {a:>18.6} {:>10.2e}", (q - a) / q);
    }
    Ok(())
}
