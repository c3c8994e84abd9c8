use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest argument the exact sieve accepts.
pub const SIEVE_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiMode {
    ExactSieve,
    Logarithmic,
}

/// π(x): exact count of primes ≤ x, or the x / ln x approximation.
pub fn prime_pi(x: f64, mode: PiMode) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("prime_pi requires x >= 2, got {x}")));
    }
    match mode {
        PiMode::Logarithmic => Ok(x / x.ln()),
        PiMode::ExactSieve => {
            if x > SIEVE_LIMIT {
                return Err(Error::Resource(format!(
                    "exact sieve limited to x <= {SIEVE_LIMIT:e}, got {x}"
                )));
            }
            Ok(count_primes(x.floor() as usize) as f64)
        }
    }
}

/// Odd-only sieve of Eratosthenes.
pub fn count_primes(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    // index i stands for 2i + 1
    let half = (n - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    1 + composite.iter().filter(|&&c| !c).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_primes(1), 0);
        assert_eq!(count_primes(2), 1);
        assert_eq!(count_primes(3), 2);
        assert_eq!(count_primes(10), 4);
        assert_eq!(count_primes(100), 25);
    }

    #[test]
    fn errors() {
        assert!(matches!(prime_pi(1.5, PiMode::ExactSieve), Err(Error::Domain(_))));
        assert!(matches!(prime_pi(2e8, PiMode::ExactSieve), Err(Error::Resource(_))));
        assert!(prime_pi(2e8, PiMode::Logarithmic).is_ok());
    }
}
