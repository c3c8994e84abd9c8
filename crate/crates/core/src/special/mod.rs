//! Critical-line special functions: θ, Z, the local spectral form of Z,
//! |χ(1/2+it)| and π(x).

mod gamma;
mod primes;
mod spectral;
mod zeta;

pub use gamma::{chi_mod, ln_gamma};
pub use primes::{count_primes, prime_pi, PiMode, SIEVE_LIMIT};
pub use spectral::{spectral_z, SpectralWindow};
pub use zeta::{
    rs_breakpoints, theta, theta_main, z_em, z_eval, z_rs, z_value, zeta_em, RSEvalConfig, ZMethod, ZValue,
};

