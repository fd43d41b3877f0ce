//! Exact `q_{k,1}` (and higher moments) by enumerating small k-bit sets.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{coprime_to_2d, sl_count, slpsp_bruteforce_unbounded};
use crate::error::{capacity, invalid, Result};
use crate::integer_kernel::{factorize, is_perfect_square_u64, jacobi_i64, Factorization};

pub const EXACT_QK1_MAX_K: u32 = 16;

/// Every non-square `D ≡ 0, 1 (mod 4)` with `|D| <= 64`.
pub fn default_d_scan() -> Vec<i64> {
    (-64i64..=64)
        .filter(|d| d.rem_euclid(4) <= 1)
        .filter(|&d| d < 0 || !is_perfect_square_u64(d as u64))
        .collect()
}

/// One composite's contribution: `SL / den` with `den = n - eps - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactEntry {
    pub n: u64,
    pub sl: u64,
    pub den: u64,
}

/// Everything needed to recompute one discriminant's value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactDTranscript {
    pub d: i64,
    pub r: u32,
    pub primes: u64,
    pub entries: Vec<ExactEntry>,
}

impl ExactDTranscript {
    /// `S / (S + primes)` with `S` the sum of `(sl/den)^r`, exactly.
    pub fn recompute(&self) -> BigRational {
        let mut lcm = BigUint::one();
        for e in &self.entries {
            let den = BigUint::from(e.den).pow(self.r);
            lcm = lcm.lcm(&den);
        }
        // common denominator keeps this linear in the number of entries
        let mut num = BigUint::zero();
        for e in &self.entries {
            let den = BigUint::from(e.den).pow(self.r);
            num += BigUint::from(e.sl).pow(self.r) * (&lcm / den);
        }
        let total = &num + &lcm * self.primes;
        if total.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(num), BigInt::from(total))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactDValue {
    pub d: i64,
    /// Reduced fraction as `num/den`.
    pub exact: String,
    pub value: f64,
    pub composites: u64,
    pub primes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactQk1 {
    pub k: u32,
    pub r: u32,
    pub exclude_twins: bool,
    pub per_d: Vec<ExactDValue>,
    pub max_d: i64,
    pub max: f64,
    #[serde(skip)]
    pub max_exact: BigRational,
    /// Composites of the maximizing `D` whose count was rechecked by brute force.
    pub cross_checked: u64,
    pub cross_check_mismatches: u64,
    pub transcripts: Vec<ExactDTranscript>,
}

impl ExactQk1 {
    pub fn transcript_for(&self, d: i64) -> Option<&ExactDTranscript> {
        self.transcripts.iter().find(|t| t.d == d)
    }
}

fn validate(k: u32, r: u32, d_scan: &[i64]) -> Result<()> {
    if !(2..=EXACT_QK1_MAX_K).contains(&k) {
        return capacity(format!("exact q at k = {k}"), EXACT_QK1_MAX_K as u64);
    }
    if r == 0 || d_scan.is_empty() {
        return invalid("need r >= 1 and a non-empty D scan");
    }
    for &d in d_scan {
        if d.rem_euclid(4) > 1 {
            return invalid(format!("D = {d} is not 0 or 1 mod 4"));
        }
        if d >= 0 && is_perfect_square_u64(d as u64) {
            return invalid(format!("D = {d} is a perfect square"));
        }
    }
    Ok(())
}

/// Enumerates odd k-bit integers coprime to 15 (optionally dropping twin
/// products), sums `alpha_bar_D(n)^r` over composites coprime to `2D`,
/// and returns `q = S / (S + #primes coprime to 2D)` for each `D`.
pub fn exact_qk1(k: u32, r: u32, d_scan: &[i64], exclude_twins: bool) -> Result<ExactQk1> {
    validate(k, r, d_scan)?;
    let (lo, hi) = (1u64 << (k - 1), 1u64 << k);
    let mut primes = Vec::new();
    let mut composites: Vec<Factorization> = Vec::new();
    for n in (lo | 1..hi).step_by(2) {
        if n % 3 == 0 || n % 5 == 0 {
            continue;
        }
        let f = factorize(n)?;
        if f.is_prime() {
            primes.push(n);
        } else if !(exclude_twins && f.is_twin_prime_product()) {
            composites.push(f);
        }
    }

    let mut per_d = Vec::with_capacity(d_scan.len());
    let mut transcripts = Vec::with_capacity(d_scan.len());
    let mut best: Option<(usize, BigRational)> = None;
    for &d in d_scan {
        let entries: Vec<ExactEntry> = composites
            .iter()
            .filter(|f| coprime_to_2d(f.value(), d))
            .map(|f| {
                let n = f.value();
                let den = (n as i64 - jacobi_i64(d, n) as i64 - 1) as u64;
                ExactEntry {
                    n,
                    sl: sl_count(f, d),
                    den,
                }
            })
            .collect();
        let tr = ExactDTranscript {
            d,
            r,
            primes: primes.iter().filter(|&&p| coprime_to_2d(p, d)).count() as u64,
            entries,
        };
        let q = tr.recompute();
        if best.as_ref().is_none_or(|(_, b)| q > *b) {
            best = Some((per_d.len(), q.clone()));
        }
        per_d.push(ExactDValue {
            d,
            exact: format!("{}/{}", q.numer(), q.denom()),
            value: q.to_f64().unwrap_or(f64::NAN),
            composites: tr.entries.len() as u64,
            primes: tr.primes,
        });
        transcripts.push(tr);
    }
    let (bi, max_exact) = best.expect("scan is non-empty");

    // 1% systematic sample of the maximizing D, rechecked by brute force
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let tr = &transcripts[bi];
    for e in tr.entries.iter().step_by(100) {
        checked += 1;
        if slpsp_bruteforce_unbounded(e.n, tr.d) != e.sl {
            mismatches += 1;
        }
    }

    Ok(ExactQk1 {
        k,
        r,
        exclude_twins,
        max_d: per_d[bi].d,
        max: per_d[bi].value,
        max_exact,
        per_d,
        cross_checked: checked,
        cross_check_mismatches: mismatches,
        transcripts,
    })
}
