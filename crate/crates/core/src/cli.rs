//! Command-line front end. Every subcommand produces a serializable report
//! rendered as json, csv or table.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_kernel::EulerKernel;
use crate::experiments::{complement_report, decompose, distinct_scan, run_theorem};
use crate::ladder::{omega, phi1, phi1_inverse, reverse_chain, tilde_z_sq, LadderModel, MAX_DEPTH};
use crate::moment::{
    cache_file_name, hl_asymptotic, resolve_cache_dir, Backend, MomentCheckpointTable, DEFAULT_T_MAX, DEFAULT_TOL,
    EULER_GAMMA,
};
use crate::report::{render, Format};
use crate::special::{chi_mod, prime_pi, theta, z_eval, PiMode, RSEvalConfig, ZMethod};

#[derive(Debug, Parser)]
#[command(name = "zladder", version, about = "Hardy's Z, Jacob's ladder and the segment transform")]
pub struct Cli {
    /// Output format: json, csv or table.
    #[arg(long, global = true, default_value = "table")]
    pub format: Format,
    /// Directory for moment checkpoint files (ZLADDER_CACHE_DIR wins).
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, clap::Args)]
pub struct ChainArgs {
    #[arg(long = "L")]
    pub l: i64,
    #[arg(long = "U", allow_negative_numbers = true)]
    pub u: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Z(t) with its error estimate.
    Z {
        #[arg(long)]
        t: f64,
        #[arg(long = "n-corrections", default_value_t = 2)]
        n_corrections: u8,
    },
    /// Riemann–Siegel θ(t).
    Theta {
        #[arg(long)]
        t: f64,
    },
    /// |χ(1/2 + it)|, which is 1.
    ChiCheck {
        #[arg(long)]
        t: f64,
    },
    /// Prime-counting function.
    Pi {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// ∫₀ᵀ Z² dt.
    Moment {
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value = "quadrature")]
        backend: Backend,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// φ₁(T), ω(T) and the inverse image of T.
    Ladder {
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value = "quadrature")]
        backend: Backend,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reversely iterated segments of [2πL, 2πL + U].
    Chain {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value = "quadrature")]
        backend: Backend,
    },
    /// Factorization report on one chain.
    Theorem {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        tol: Option<f64>,
        /// Emit the whole run (chain, extraction, Q-system) instead of the report.
        #[arg(long)]
        full: bool,
    },
    /// Signal, noise and error terms of one run.
    Decompose {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Point tuples over a U grid and their minimum separation.
    DistinctScan {
        #[arg(long = "L")]
        l: i64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long = "U0", default_value_t = 1.0)]
        u0: f64,
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// (T − φ₁(T)) / ((1−c)π(T)) over a list of T.
    Complement {
        #[arg(long = "T", value_delimiter = ',', default_value = "10000,100000,1000000")]
        t: Vec<f64>,
        #[arg(long, default_value = "asymptotic")]
        backend: Backend,
    },
    /// Build or refresh the moment checkpoint table.
    CacheBuild {
        #[arg(long = "T", default_value_t = DEFAULT_T_MAX)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZReport {
    pub t: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub method: ZMethod,
    pub precision_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub t: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiReport {
    pub t: f64,
    pub chi_mod: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiReport {
    pub x: f64,
    pub mode: PiMode,
    pub pi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub backend: Backend,
    pub value: f64,
    pub asymptotic: f64,
    pub rel_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub backend: Backend,
    pub phi1: f64,
    pub omega: f64,
    pub gap: f64,
    pub phi1_inverse: f64,
    pub tilde_z_sq: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheReport {
    pub path: String,
    pub t_max: f64,
    pub nodes: usize,
    pub seconds: f64,
}

/// Table reach needed for k inverse images above x.
fn reach_above(mut x: f64, k: usize) -> f64 {
    for _ in 0..k.min(MAX_DEPTH) {
        x += 1.2 * (1.0 - EULER_GAMMA) * x / (x.ln() - 0.3).max(1.0) + 10.0;
    }
    x
}

fn chain_reach(l: i64, u: f64, k: usize) -> f64 {
    reach_above(2.0 * PI * l as f64 + u.abs(), k)
}

struct Context {
    cache_dir: Option<PathBuf>,
}

impl Context {
    fn table(&self, reach: f64, tol: f64) -> Result<Arc<MomentCheckpointTable>> {
        let t_max = if reach <= DEFAULT_T_MAX {
            DEFAULT_T_MAX
        } else {
            (reach / 1e4).ceil() * 1e4
        };
        let cfg = RSEvalConfig::default();
        let path = resolve_cache_dir(self.cache_dir.as_deref()).join(cache_file_name(t_max, tol, &cfg));
        if !path.exists() {
            eprintln!("building moment checkpoints to T = {t_max} at {}", path.display());
        }
        Ok(Arc::new(MomentCheckpointTable::load_or_build(&path, t_max, tol, &cfg)?))
    }

    fn model(&self, backend: Backend, reach: f64) -> Result<LadderModel> {
        match backend {
            Backend::Asymptotic => Ok(LadderModel::asymptotic()),
            Backend::Quadrature => Ok(LadderModel::quadrature(self.table(reach, DEFAULT_TOL)?)),
        }
    }
}

fn with_tol(m: LadderModel, tol: Option<f64>) -> LadderModel {
    match tol {
        Some(t) => m.with_tol(t),
        None => m,
    }
}

fn check_u(u: f64) -> Result<()> {
    crate::ladder::check_u(u)
}

fn execute(cli: &Cli) -> Result<String> {
    let ctx = Context {
        cache_dir: cli.cache_dir.clone(),
    };
    let f = cli.format;
    match &cli.command {
        Command::Z { t, n_corrections } => {
            let cfg = RSEvalConfig {
                n_corrections: *n_corrections,
                ..RSEvalConfig::default()
            };
            let z = z_eval(*t, &cfg)?;
            if z.precision_warning() {
                eprintln!("warning: error estimate {:.3e} exceeds 1e-3", z.error_estimate);
            }
            render(
                &ZReport {
                    t: *t,
                    value: z.value,
                    error_estimate: z.error_estimate,
                    method: z.method,
                    precision_warning: z.precision_warning(),
                },
                f,
            )
        }
        Command::Theta { t } => render(&ThetaReport { t: *t, theta: theta(*t)? }, f),
        Command::ChiCheck { t } => {
            let c = chi_mod(*t)?;
            render(
                &ChiReport {
                    t: *t,
                    chi_mod: c,
                    deviation: c - 1.0,
                },
                f,
            )
        }
        Command::Pi { x, mode } => {
            let mode = match mode.as_str() {
                "exact" | "exact-sieve" => PiMode::ExactSieve,
                "log" | "logarithmic" => PiMode::Logarithmic,
                other => {
                    return Err(Error::Parameter(format!("mode must be exact or log, got {other}")));
                }
            };
            render(&PiReport { x: *x, mode, pi: prime_pi(*x, mode)? }, f)
        }
        Command::Moment { t, backend, tol } => {
            let value = match backend {
                Backend::Asymptotic => hl_asymptotic(*t, EULER_GAMMA, 0.0),
                Backend::Quadrature => ctx.table(*t, *tol)?.integral(*t)?,
            };
            let asymptotic = hl_asymptotic(*t, EULER_GAMMA, 0.0);
            render(
                &MomentReport {
                    t: *t,
                    backend: *backend,
                    value,
                    asymptotic,
                    rel_diff: if value != 0.0 { (value - asymptotic) / value } else { 0.0 },
                },
                f,
            )
        }
        Command::Ladder { t, backend, tol } => {
            let m = with_tol(ctx.model(*backend, reach_above(*t, 1))?, *tol);
            m.validate()?;
            let y = phi1(*t, &m)?;
            render(
                &LadderReport {
                    t: *t,
                    backend: *backend,
                    phi1: y,
                    omega: omega(*t, &m)?,
                    gap: t - y,
                    phi1_inverse: phi1_inverse(*t, &m)?,
                    tilde_z_sq: match backend {
                        Backend::Quadrature => Some(tilde_z_sq(*t, &m)?),
                        Backend::Asymptotic => None,
                    },
                },
                f,
            )
        }
        Command::Chain { chain, backend } => {
            check_u(chain.u)?;
            let m = ctx.model(*backend, chain_reach(chain.l, chain.u, chain.k))?;
            render(&reverse_chain(chain.l, chain.u, chain.k, &m)?, f)
        }
        Command::Theorem {
            chain,
            kernel,
            tol,
            full,
        } => {
            check_u(chain.u)?;
            let kr = EulerKernel::new(kernel.a, kernel.b)?;
            let m = with_tol(ctx.model(Backend::Quadrature, chain_reach(chain.l, chain.u, chain.k))?, *tol);
            let run = run_theorem(chain.l, chain.u, chain.k, &kr, &m)?;
            for w in run.report.warnings.iter().chain(&run.qsystem.warnings) {
                eprintln!("warning: {w}");
            }
            if *full {
                render(&run, f)
            } else {
                render(&run.report, f)
            }
        }
        Command::Decompose { chain, kernel } => {
            check_u(chain.u)?;
            let kr = EulerKernel::new(kernel.a, kernel.b)?;
            let m = ctx.model(Backend::Quadrature, chain_reach(chain.l, chain.u, chain.k))?;
            let run = run_theorem(chain.l, chain.u, chain.k, &kr, &m)?;
            render(&decompose(&run)?, f)
        }
        Command::DistinctScan {
            l,
            k,
            kernel,
            u0,
            delta,
            n,
        } => {
            let kr = EulerKernel::new(kernel.a, kernel.b)?;
            let m = ctx.model(Backend::Quadrature, chain_reach(*l, u0 + delta, *k))?;
            render(&distinct_scan(*l, *k, &kr, &m, *u0, *delta, *n)?, f)
        }
        Command::Complement { t, backend } => {
            let reach = t.iter().cloned().fold(0.0, f64::max);
            let m = ctx.model(*backend, reach)?;
            render(&complement_report(t, &m)?, f)
        }
        Command::CacheBuild { t, tol } => {
            let start = Instant::now();
            let cfg = RSEvalConfig::default();
            let path = resolve_cache_dir(ctx.cache_dir.as_deref()).join(cache_file_name(*t, *tol, &cfg));
            let table = MomentCheckpointTable::load_or_build(&path, *t, *tol, &cfg)?;
            render(
                &CacheReport {
                    path: path.display().to_string(),
                    t_max: table.t_max(),
                    nodes: table.grid.len(),
                    seconds: start.elapsed().as_secs_f64(),
                },
                f,
            )
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code: 0 success, 1 domain or parameter error, 2
/// convergence or tolerance failure.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let text = if text.ends_with('\n') { text } else { text + "\n" };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
