use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::sieve::sieve_primes;
use crate::error::{capacity, invalid, Result};

/// `factorize` accepts `n < 2^52`.
pub const FACTORIZE_LIMIT: u64 = 1 << 52;

/// Prime-power decomposition, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds from `(p, r)` pairs. Primality is the caller's promise; order
    /// and positivity are checked.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        if factors.is_empty() {
            return invalid("empty factorization");
        }
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return invalid("factorization primes must be strictly increasing");
            }
        }
        if factors.iter().any(|&(p, r)| p < 2 || r == 0) {
            return invalid("factorization needs primes >= 2 and positive exponents");
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The integer this factorization reconstructs.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, r)| p.pow(r)).product()
    }

    /// Number of distinct primes, ω(n).
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of primes with multiplicity, Ω(n).
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `n = p(p+2)` with both factors prime.
    pub fn is_twin_prime_product(&self) -> bool {
        matches!(self.factors.as_slice(), [(p, 1), (q, 1)] if q - p == 2)
    }
}

static SMALL: OnceLock<Vec<u32>> = OnceLock::new();
static LARGE: OnceLock<Vec<u32>> = OnceLock::new();

fn trial_primes(root: u64) -> &'static [u32] {
    let build = |lim: u64| sieve_primes(lim).unwrap().into_iter().map(|p| p as u32).collect();
    if root <= 1 << 16 {
        SMALL.get_or_init(|| build(1 << 16))
    } else {
        LARGE.get_or_init(|| build(1 << 26))
    }
}

/// Trial division by sieved primes up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return invalid(format!("factorize needs n >= 2, got {n}"));
    }
    if n >= FACTORIZE_LIMIT {
        return capacity(format!("factorize({n})"), FACTORIZE_LIMIT);
    }
    let mut m = n;
    let mut out = Vec::new();
    let root = num_integer::Roots::sqrt(&n);
    for &p in trial_primes(root) {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut r = 0;
            while m % p == 0 {
                m /= p;
                r += 1;
            }
            out.push((p, r));
        }
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(Factorization { factors: out })
}
