//! Point tuples for a grid of U around U₀ and their separation.
//!
//! ```bash
//! cargo run --release -p zladder --example distinct_scan
//! ```

use std::sync::Arc;

use zladder::euler_kernel::EulerKernel;
use zladder::experiments::distinct_scan;
use zladder::ladder::LadderModel;
use zladder::moment::{cache_file_name, resolve_cache_dir, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

fn main() -> zladder::Result<()> {
    let cfg = RSEvalConfig::default();
    let path = resolve_cache_dir(None).join(cache_file_name(5e4, DEFAULT_TOL, &cfg));
    let m = LadderModel::quadrature(Arc::new(MomentCheckpointTable::load_or_build(&path, 5e4, DEFAULT_TOL, &cfg)?));
    let kr = EulerKernel::new(2.0, 1.0)?;

    let scan = distinct_scan(1592, 2, &kr, &m, 1.0, 0.2, 8)?;
    for (u, tuple) in scan.grid.iter().zip(&scan.tuples) {
        println!("U = {u:.3}: {tuple:.6?}");
    }
    println!(
        "{} pairs, min max-norm gap {:.4e}, min component gap {:.4e}",
        scan.pair_count(),
        scan.min_pairwise_gap,
        scan.min_component_gap
    );
    Ok(())
}
