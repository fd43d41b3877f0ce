//! Closed-form pseudoprime counts and the brute-force loops that check them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::classical_tests::mr_check;
use crate::error::{capacity, invalid, Result};
use crate::integer_kernel::ring::{ModRing, U64Ring};
use crate::integer_kernel::{gcd, jacobi_i64, Factorization, Natural};
use crate::lucas::{split_u64, strong_check, weak_check, LucasParams};

/// Brute-force oracles refuse `n` at or above this.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000;

/// An exact proportion `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub numerator: Natural,
    pub denominator: Natural,
}

impl AlphaValue {
    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator.clone()), BigInt::from(self.denominator.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.as_rational().to_f64().unwrap_or(f64::NAN)
    }
}

impl std::fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = self.as_rational();
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn eps(d: i64, n: u64) -> i8 {
    jacobi_i64(d, n)
}

/// `gcd(n, 2D) = 1`.
pub fn coprime_to_2d(n: u64, d: i64) -> bool {
    n % 2 == 1 && n.gcd(&d.unsigned_abs()) == 1
}

fn require_coprime(n: u64, d: i64) -> Result<()> {
    if !coprime_to_2d(n, d) {
        return invalid(format!("gcd({n}, 2*{d}) != 1"));
    }
    Ok(())
}

fn minus_eps(x: u64, e: i8) -> u64 {
    (x as i128 - e as i128) as u64
}

/// Arnault's totient analogue: multiplicative, `p^(r-1) (p - eps_D(p))`
/// on prime powers.
pub fn phi_d(f: &Factorization, d: i64) -> Result<u64> {
    require_coprime(f.value(), d)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, r)| p.pow(r - 1) * minus_eps(p, eps(d, p)))
        .product())
}

/// Number of pairs `(P, Q)`, `0 <= P, Q < n`, `gcd(Q, n) = 1`,
/// `P^2 - 4Q ≡ D`, for which `n` passes the strong Lucas condition.
/// Zero when `gcd(n, 2D) > 1`.
pub fn sl_count(f: &Factorization, d: i64) -> u64 {
    let n = f.value();
    if !coprime_to_2d(n, d) {
        return 0;
    }
    let (_, q) = split_u64(minus_eps(n, eps(d, n)));
    let s = f.omega() as u32;
    let mut k1 = u32::MAX;
    let mut prod_minus = 1u128;
    let mut prod = 1u128;
    for p in f.primes() {
        let (ki, qi) = split_u64(minus_eps(p, eps(d, p)));
        k1 = k1.min(ki);
        let g = q.gcd(&qi) as u128;
        prod_minus *= g - 1;
        prod *= g;
    }
    let geo: u128 = (0..k1).map(|j| 1u128 << (j * s)).sum();
    (prod_minus + geo * prod) as u64
}

fn brute_guard(n: u64) -> Result<()> {
    if n >= BRUTE_FORCE_LIMIT {
        return capacity(format!("brute force at n = {n}"), BRUTE_FORCE_LIMIT);
    }
    if n < 3 || n % 2 == 0 {
        return invalid(format!("brute force needs odd n >= 3, got {n}"));
    }
    Ok(())
}

// Q ≡ (P^2 - D)/4 (mod n) for each P in [0, n)
fn pairs(n: u64, d: i64) -> impl Iterator<Item = (u64, u64)> {
    let r = U64Ring::new(n);
    let inv4 = r.sqr(&r.half(&1));
    let dm = r.from_int(&BigInt::from(d));
    (0..n).map(move |p| (p, r.mul(&r.sub(&r.sqr(&p), &dm), &inv4)))
}

/// Direct count of pairs making `n` an slpsp, by running the strong
/// condition for every `P`. Counts regardless of `gcd(n, 2D)`.
pub fn slpsp_bruteforce(n: u64, d: i64) -> Result<u64> {
    brute_guard(n)?;
    Ok(slpsp_bruteforce_unbounded(n, d))
}

// Caller guarantees odd n >= 3.
pub(crate) fn slpsp_bruteforce_unbounded(n: u64, d: i64) -> u64 {
    let r = U64Ring::new(n);
    let e = eps(d, n);
    let dm = r.from_int(&BigInt::from(d));
    pairs(n, d)
        .filter(|&(p, q)| q.gcd(&n) == 1 && strong_check(&r, &p, &q, &dm, e))
        .count() as u64
}

/// Bases `a mod n` with `a^(n-1) ≡ 1`, counting the trivial `±1`.
pub fn fermat_count(f: &Factorization) -> u64 {
    let n = f.value();
    f.primes().map(|p| (n - 1).gcd(&(p - 1))).product()
}

pub fn fermat_bruteforce(n: u64) -> Result<u64> {
    brute_guard(n)?;
    let r = U64Ring::new(n);
    Ok((0..n).filter(|&a| r.pow_u64(a, n - 1) == 1).count() as u64)
}

/// Number of `P mod n` whose induced `Q` makes `n` an lpsp.
pub fn lucas_count(f: &Factorization, d: i64) -> Result<u64> {
    let n = f.value();
    require_coprime(n, d)?;
    let top = minus_eps(n, eps(d, n));
    Ok(f.primes()
        .map(|p| top.gcd(&minus_eps(p, eps(d, p))) - 1)
        .product())
}

pub fn lucas_bruteforce(n: u64, d: i64) -> Result<u64> {
    brute_guard(n)?;
    let r = U64Ring::new(n);
    let e = eps(d, n);
    let dm = r.from_int(&BigInt::from(d));
    Ok(pairs(n, d).filter(|&(p, q)| weak_check(&r, &p, &q, &dm, e)).count() as u64)
}

/// Bases `a` in `[1, n)` for which `n` is an spsp(a).
pub fn mr_count(f: &Factorization) -> u64 {
    let n = f.value();
    let (_, q) = split_u64(n - 1);
    let s = f.omega() as u32;
    let mut k1 = u32::MAX;
    let mut prod = 1u128;
    for p in f.primes() {
        let (li, _) = split_u64(p - 1);
        k1 = k1.min(li);
        prod *= q.gcd(&(p - 1)) as u128;
    }
    let geo: u128 = (0..k1).map(|j| 1u128 << (j * s)).sum();
    ((1 + geo) * prod) as u64
}

pub fn mr_bruteforce(n: u64) -> Result<u64> {
    brute_guard(n)?;
    let r = U64Ring::new(n);
    Ok((1..n).filter(|a| mr_check(&r, a)).count() as u64)
}

fn alpha(num: u64, den: u64) -> AlphaValue {
    AlphaValue {
        numerator: Natural::from(num),
        denominator: Natural::from(den),
    }
}

/// `SL(D, n) / (n - eps_D(n) - 1)`.
pub fn alpha_bar(n: u64, f: &Factorization, d: i64) -> Result<AlphaValue> {
    if f.value() != n {
        return invalid(format!("factorization does not reconstruct {n}"));
    }
    require_coprime(n, d)?;
    let den = minus_eps(n, eps(d, n)) - 1;
    if den == 0 {
        return invalid(format!("n - eps - 1 vanishes at n = {n}"));
    }
    Ok(alpha(sl_count(f, d), den))
}

/// `SL(D, n) / phi_D(n)`.
pub fn alpha_d(f: &Factorization, d: i64) -> Result<AlphaValue> {
    Ok(alpha(sl_count(f, d), phi_d(f, d)?))
}

/// Lucas parameters `P = b + c`, `Q = bc`, `D = (b - c)^2` (all mod `n`)
/// for which a common Fermat pseudoprime `n` of bases `b`, `c` is an lpsp.
pub fn psp_to_lpsp_compose(n: &Natural, b: &Natural, c: &Natural) -> Result<LucasParams> {
    if n.is_even() || *n < BigUint::from(5u32) {
        return invalid(format!("n must be odd and >= 5, got {n}"));
    }
    let e = n - 1u32;
    for base in [b, c] {
        if !base.modpow(&e, n).is_one() {
            return invalid(format!("{n} is not a Fermat pseudoprime to base {base}"));
        }
    }
    let (bi, ci) = (BigInt::from(b.clone()), BigInt::from(c.clone()));
    let diff = (&bi - &ci).magnitude().clone();
    if !gcd(&(b * c * &diff), n).is_one() {
        return invalid("gcd(n, bc(b - c)) != 1");
    }
    let p = (b + c) % n;
    let q = (b * c) % n;
    let d = (&diff * &diff) % n;
    Ok(LucasParams::with_discriminant(p, q, d))
}
