use std::io::Write;

use crate::error::{capacity, Result};

/// Largest accepted sieve limit.
pub const SIEVE_LIMIT: u64 = 1 << 33;

// Odd numbers per segment; 256 KiB of flags.
const SEGMENT: u64 = 1 << 18;

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Calls `f` on every prime in `[lo, hi)` in ascending order. Always
/// segmented so memory stays flat regardless of the range.
pub fn for_each_prime(lo: u64, hi: u64, mut f: impl FnMut(u64)) -> Result<()> {
    if hi > SIEVE_LIMIT + 1 {
        return capacity(format!("sieve range up to {hi}"), SIEVE_LIMIT);
    }
    if hi <= lo {
        return Ok(());
    }
    if lo <= 2 && 2 < hi {
        f(2);
    }
    let root = num_integer::Roots::sqrt(&hi) + 1;
    let base: Vec<u64> = small_primes(root).into_iter().filter(|&p| p > 2).collect();

    // segment covers odd numbers start, start+2, ..., start+2*(SEGMENT-1)
    let mut start = lo.max(3) | 1;
    let mut flags = vec![true; SEGMENT as usize];
    while start < hi {
        let end = (start + 2 * SEGMENT).min(hi);
        let len = ((end - start + 1) / 2) as usize;
        flags[..len].iter_mut().for_each(|x| *x = true);
        for &p in &base {
            if p * p >= end {
                break;
            }
            // first odd multiple of p that is >= max(start, p*p)
            let mut m = (start.div_ceil(p)).max(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            while m < end {
                flags[((m - start) / 2) as usize] = false;
                m += 2 * p;
            }
        }
        for (i, &is_p) in flags[..len].iter().enumerate() {
            let v = start + 2 * i as u64;
            if is_p {
                f(v);
            }
        }
        start = end | 1;
    }
    Ok(())
}

/// All primes `<= limit`, ascending.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_LIMIT {
        return capacity(format!("sieve limit {limit}"), SIEVE_LIMIT);
    }
    let mut out = Vec::new();
    for_each_prime(0, limit + 1, |p| out.push(p))?;
    Ok(out)
}

/// Number of primes in `[lo, hi)`.
pub fn count_primes(lo: u64, hi: u64) -> Result<u64> {
    let mut c = 0u64;
    for_each_prime(lo, hi, |_| c += 1)?;
    Ok(c)
}

/// Streams primes `<= limit` as newline-delimited decimal text.
pub fn write_primes(limit: u64, out: &mut impl Write) -> Result<()> {
    let mut err = None;
    for_each_prime(0, limit.saturating_add(1), |p| {
        if err.is_none() {
            if let Err(e) = writeln!(out, "{p}") {
                err = Some(e);
            }
        }
    })?;
    match err {
        Some(e) => Err(crate::Error::InvalidArgument(format!("write failed: {e}"))),
        None => Ok(()),
    }
}
