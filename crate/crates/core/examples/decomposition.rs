//! Signal, noise and error terms across U, and stationarity of the
//! signal in L.
//!
//! ```bash
//! cargo run --release -p zladder --example decomposition
//! ```

use std::sync::Arc;

use zladder::euler_kernel::EulerKernel;
use zladder::experiments::{decompose, run_theorem};
use zladder::ladder::LadderModel;
use zladder::moment::{cache_file_name, resolve_cache_dir, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

fn main() -> zladder::Result<()> {
    let cfg = RSEvalConfig::default();
    let path = resolve_cache_dir(None).join(cache_file_name(5e4, DEFAULT_TOL, &cfg));
    let m = LadderModel::quadrature(Arc::new(MomentCheckpointTable::load_or_build(&path, 5e4, DEFAULT_TOL, &cfg)?));
    let kr = EulerKernel::new(2.0, 1.0)?;

    println!("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12}", "L", "U", "signal", "noise", "residual", "scale");
    for l in [1592, 3183, 6366] {
        for u in [0.5, 1.0, 1.5, 2.5] {
            let d = decompose(&run_theorem(l, u, 1, &kr, &m)?)?;
            println!(
                "{l:>6} {u:>6} {:>12.9} {:>+12.9} {:>12.2e} {:>12.4}",
                d.signal, d.noise, d.error_residual, d.error_scale
            );
        }
    }
    Ok(())
}
