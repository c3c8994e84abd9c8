//! Full factorization run: chain, mean-value points, the exact and
//! asymptotic right sides, spacing ratios and the Q-system.
//!
//! ```bash
//! cargo run --release -p zladder --example theorem -- 1592 1.0
//! ```

use std::sync::Arc;

use zladder::euler_kernel::EulerKernel;
use zladder::experiments::run_theorem;
use zladder::ladder::LadderModel;
use zladder::moment::{cache_file_name, resolve_cache_dir, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

fn main() -> zladder::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(1592);
    let u: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);

    let cfg = RSEvalConfig::default();
    let path = resolve_cache_dir(None).join(cache_file_name(5e4, DEFAULT_TOL, &cfg));
    let m = LadderModel::quadrature(Arc::new(MomentCheckpointTable::load_or_build(&path, 5e4, DEFAULT_TOL, &cfg)?));
    let kr = EulerKernel::new(2.0, 1.0)?;

    for k in 1..=3 {
        let run = run_theorem(l, u, k, &kr, &m)?;
        let rep = &run.report;
        println!("k = {k} ({} ms)", run.elapsed_ms);
        println!("  alphas  {:.9?}", rep.alphas);
        println!("  betas   {:.9?}", rep.betas);
        println!("  lhs {:.12}  rhs_exact {:.12}  rhs_asym {:.12}", rep.lhs, rep.rhs_exact, rep.rhs_asym);
        println!("  lhs/rhs_exact - 1 = {:.2e}, lhs/rhs_asym - 1 = {:.2e}", rep.identity_error(), rep.asymptotic_error());
        println!("  spacing {:.4?} beta spacing {:.4?}", rep.spacing_ratios, rep.beta_spacing_ratios);
        let q = &run.qsystem;
        println!("  Q-system product {:+.10} vs sqrt(lhs) {:.10}", q.product, rep.lhs.sqrt());
        for w in rep.warnings.iter().chain(&q.warnings) {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
