//! Big-integer plumbing: modular arithmetic, Jacobi symbol, square test,
//! sieve and trial-division factorization.

mod factor;
pub mod ring;
mod sieve;

pub use factor::{factorize, Factorization, FACTORIZE_LIMIT};
pub use sieve::{count_primes, for_each_prime, sieve_primes, write_primes, SIEVE_LIMIT};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Unbounded nonnegative integer.
pub type Natural = BigUint;

/// Parses decimal or `0x`-prefixed hexadecimal.
pub fn parse_natural(s: &str) -> Result<Natural> {
    let t = s.trim().replace('_', "");
    let parsed = if let Some(h) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        BigUint::parse_bytes(h.as_bytes(), 16)
    } else {
        BigUint::parse_bytes(t.as_bytes(), 10)
    };
    match parsed {
        Some(v) if !t.is_empty() => Ok(v),
        _ => Err(Error::Parse(s.to_string())),
    }
}

/// Parses a signed integer, decimal or hex, with an optional leading minus.
pub fn parse_integer(s: &str) -> Result<BigInt> {
    let t = s.trim();
    match t.strip_prefix('-') {
        Some(rest) => Ok(-BigInt::from(parse_natural(rest)?)),
        None => Ok(BigInt::from(parse_natural(t)?)),
    }
}

pub fn to_hex(n: &Natural) -> String {
    format!("0x{}", n.to_str_radix(16))
}

pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn mod_add(a: &Natural, b: &Natural, n: &Natural) -> Result<Natural> {
    check_modulus(n)?;
    Ok((a + b) % n)
}

pub fn mod_mul(a: &Natural, b: &Natural, n: &Natural) -> Result<Natural> {
    check_modulus(n)?;
    Ok((a * b) % n)
}

pub fn mod_exp(a: &Natural, e: &Natural, n: &Natural) -> Result<Natural> {
    check_modulus(n)?;
    Ok(a.modpow(e, n))
}

pub fn mod_inv(a: &Natural, n: &Natural) -> Result<Natural> {
    check_modulus(n)?;
    if n.is_one() {
        return Ok(Natural::zero());
    }
    let m = BigInt::from(n.clone());
    let e = BigInt::from(a % n).extended_gcd(&m);
    if !e.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: n.clone(),
            gcd: e.gcd.magnitude().clone(),
        });
    }
    Ok(e.x.mod_floor(&m).magnitude().clone())
}

fn check_modulus(n: &Natural) -> Result<()> {
    if n.is_zero() {
        return invalid("modulus must be at least 1");
    }
    Ok(())
}

/// Reduces a signed integer into `[0, n)`.
pub fn reduce(a: &BigInt, n: &Natural) -> Natural {
    let m = BigInt::from(n.clone());
    a.mod_floor(&m).magnitude().clone()
}

/// Jacobi symbol `(a/n)` for odd positive `n`; `a` may be negative.
pub fn jacobi(a: &BigInt, n: &Natural) -> Result<i8> {
    if n.is_zero() || n.is_even() {
        return invalid(format!("jacobi needs odd positive n, got {n}"));
    }
    if let (Some(a64), Some(n64)) = (a.to_i64(), n.to_u64()) {
        return Ok(jacobi_i64(a64, n64));
    }
    let mut sign = 1i8;
    if a.is_negative() && (n % 4u32).to_u32() == Some(3) {
        sign = -1;
    }
    let mut a = a.magnitude() % n;
    let mut n = n.clone();
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n8 = (&n % 8u32).to_u32().unwrap_or(0);
        if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
            sign = -sign;
        }
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            sign = -sign;
        }
        let r = &n % &a;
        n = a;
        a = r;
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Jacobi symbol on machine words.
pub fn jacobi_i64(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi needs odd n");
    let mut sign = 1i8;
    let mut a = if a < 0 {
        // (-1/n) = (-1)^((n-1)/2)
        if n % 4 == 3 {
            sign = -1;
        }
        a.unsigned_abs() % n
    } else {
        a as u64 % n
    };
    let mut n = n;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Newton perfect-square test. Starts from `x0 = 2^m - 1` with
/// `m = ceil(bits/2)` and stops once the iterate no longer decreases.
pub fn is_perfect_square(d: &Natural) -> bool {
    if d.is_zero() || d.is_one() {
        return true;
    }
    let m = (d.bits() + 1) / 2;
    let mut x: Natural = (Natural::one() << m) - 1u32;
    loop {
        let y: Natural = (&x + d / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    &x * &x == *d
}

pub fn is_perfect_square_u64(d: u64) -> bool {
    is_perfect_square(&Natural::from(d))
}

/// The first `count` odd primes, `3, 5, 7, ...`.
pub fn first_odd_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 3u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 2;
    }
    out
}
