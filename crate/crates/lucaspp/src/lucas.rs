//! Lucas sequences and the weak and strong Lucas test rounds.

use num_bigint::{BigInt, RandBigInt};
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::integer_kernel::ring::{with_ring, ModRing};
use crate::integer_kernel::{gcd, is_perfect_square, jacobi, reduce, Natural};

/// One round's bases. `d` is congruent to `p^2 - 4q` modulo the working
/// modulus (exactly equal when built with [`LucasParams::new`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasParams {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
}

impl LucasParams {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let (p, q) = (p.into(), q.into());
        let d = &p * &p - 4 * &q;
        LucasParams { p, q, d }
    }

    pub fn with_discriminant(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        LucasParams {
            p: p.into(),
            q: q.into(),
            d: d.into(),
        }
    }

    /// `p^2 - 4q ≡ d (mod n)`.
    pub fn consistent_mod(&self, n: &Natural) -> bool {
        let diff = &self.p * &self.p - 4 * &self.q - &self.d;
        reduce(&diff, n).is_zero()
    }
}

/// `m = 2^kappa * q` with `q` odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenOddSplit {
    pub kappa: u32,
    pub q: Natural,
}

impl EvenOddSplit {
    pub fn of(m: &Natural) -> Result<Self> {
        if m.is_zero() {
            return invalid("cannot split 0 into 2^k * odd");
        }
        let kappa = m.trailing_zeros().unwrap_or(0) as u32;
        Ok(EvenOddSplit {
            kappa,
            q: m >> kappa,
        })
    }

    pub fn reconstruct(&self) -> Natural {
        &self.q << self.kappa
    }
}

/// `(kappa, q)` with `m = 2^kappa * q`, `q` odd. `m` must be nonzero.
pub fn split_u64(m: u64) -> (u32, u64) {
    debug_assert!(m != 0);
    let k = m.trailing_zeros();
    (k, m >> k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadParams {
    /// `gcd(D, n) > 1`, so `jacobi(D, n) = 0`. A gcd strictly below `n`
    /// is itself a factor of `n`.
    DiscriminantNotCoprime { gcd: Natural },
    /// `Q ≡ 0 (mod n)`.
    QDivisibleByN,
}

impl std::fmt::Display for BadParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BadParams::DiscriminantNotCoprime { gcd } => write!(f, "gcd(D, n) = {gcd}"),
            BadParams::QDivisibleByN => write!(f, "Q is divisible by n"),
        }
    }
}

/// Outcome of one test round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ProbablePrime,
    /// `factor` is set when a gcd screen exposed a proper divisor.
    Composite { factor: Option<Natural> },
    BadParams(BadParams),
}

impl Verdict {
    pub fn is_probable_prime(&self) -> bool {
        matches!(self, Verdict::ProbablePrime)
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, Verdict::Composite { .. })
    }

    pub(crate) fn composite() -> Self {
        Verdict::Composite { factor: None }
    }
}

/// Discriminant sequences for choosing `(D, P, Q)` deterministically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DMethod {
    /// 5, -7, 9, -11, ... with P = 1.
    A,
    /// 5, 9, 13, ... with P the least odd integer above sqrt(D).
    B,
}

pub const EXACT_INDEX_LIMIT: u32 = 10_000;

/// `(U_m, V_m)` straight from the recurrence.
pub fn lucas_uv_exact(params: &LucasParams, m: u32) -> Result<(BigInt, BigInt)> {
    if m > EXACT_INDEX_LIMIT {
        return Err(Error::Capacity {
            what: format!("exact Lucas index {m}"),
            limit: EXACT_INDEX_LIMIT.to_string(),
        });
    }
    let (p, q) = (&params.p, &params.q);
    let (mut u0, mut u1) = (BigInt::zero(), BigInt::one());
    let (mut v0, mut v1) = (BigInt::from(2), p.clone());
    if m == 0 {
        return Ok((u0, v0));
    }
    for _ in 1..m {
        let u2 = p * &u1 - q * &u0;
        let v2 = p * &v1 - q * &v0;
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
    Ok((u1, v1))
}

/// `(U_m, V_m, Q^m)` in `ring`, by left-to-right doubling.
pub fn lucas_uv_in<R: ModRing>(
    ring: &R,
    p: &R::Elem,
    q: &R::Elem,
    d: &R::Elem,
    m: &Natural,
) -> (R::Elem, R::Elem, R::Elem) {
    let two = ring.add(&ring.one(), &ring.one());
    let mut u = ring.zero();
    let mut v = two.clone();
    let mut qk = ring.one();
    for i in (0..m.bits()).rev() {
        u = ring.mul(&u, &v);
        v = ring.sub(&ring.sqr(&v), &ring.add(&qk, &qk));
        qk = ring.sqr(&qk);
        if m.bit(i) {
            let pu = ring.mul(p, &u);
            let du = ring.mul(d, &u);
            let pv = ring.mul(p, &v);
            u = ring.half(&ring.add(&pu, &v));
            v = ring.half(&ring.add(&du, &pv));
            qk = ring.mul(&qk, q);
        }
    }
    (u, v, qk)
}

fn check_odd_modulus(n: &Natural, min: u32) -> Result<()> {
    if n.is_even() || *n < Natural::from(min) {
        return invalid(format!("modulus must be odd and >= {min}, got {n}"));
    }
    Ok(())
}

/// `(U_m mod n, V_m mod n, Q^m mod n)`.
pub fn lucas_uv_mod(params: &LucasParams, m: &Natural, n: &Natural) -> Result<(Natural, Natural, Natural)> {
    check_odd_modulus(n, 3)?;
    if !params.consistent_mod(n) {
        return invalid("D is not congruent to P^2 - 4Q modulo n");
    }
    Ok(with_ring!(n, |r| {
        let (u, v, qm) = lucas_uv_in(&r, &r.from_int(&params.p), &r.from_int(&params.q), &r.from_int(&params.d), m);
        (r.to_natural(&u), r.to_natural(&v), r.to_natural(&qm))
    }))
}

pub(crate) fn n_minus_eps(n: &Natural, eps: i8) -> Natural {
    match eps {
        -1 => n + 1u32,
        0 => n.clone(),
        _ => n - 1u32,
    }
}

/// `n | U_q` or `n | V_{2^i q}` for some `i < kappa`, where
/// `n - eps = 2^kappa q`.
pub(crate) fn strong_check<R: ModRing>(ring: &R, p: &R::Elem, q: &R::Elem, d: &R::Elem, eps: i8) -> bool {
    let m = n_minus_eps(&ring.modulus(), eps);
    let split = EvenOddSplit::of(&m).expect("n - eps is positive");
    let (u, mut v, mut qk) = lucas_uv_in(ring, p, q, d, &split.q);
    if ring.is_zero(&u) || ring.is_zero(&v) {
        return true;
    }
    for _ in 1..split.kappa {
        v = ring.sub(&ring.sqr(&v), &ring.add(&qk, &qk));
        qk = ring.sqr(&qk);
        if ring.is_zero(&v) {
            return true;
        }
    }
    false
}

/// `n | U_{n - eps}`.
pub(crate) fn weak_check<R: ModRing>(ring: &R, p: &R::Elem, q: &R::Elem, d: &R::Elem, eps: i8) -> bool {
    let m = n_minus_eps(&ring.modulus(), eps);
    let (u, _, _) = lucas_uv_in(ring, p, q, d, &m);
    ring.is_zero(&u)
}

// gcd screens shared by both rounds; Ok(eps) when the round may proceed.
fn screen(n: &Natural, params: &LucasParams) -> Result<std::result::Result<i8, Verdict>> {
    check_odd_modulus(n, 5)?;
    if !params.consistent_mod(n) {
        return invalid("D is not congruent to P^2 - 4Q modulo n");
    }
    let dm = reduce(&params.d, n);
    let gd = gcd(&dm, n);
    if !gd.is_one() {
        return Ok(Err(Verdict::BadParams(BadParams::DiscriminantNotCoprime { gcd: gd })));
    }
    let qm = reduce(&params.q, n);
    if qm.is_zero() {
        return Ok(Err(Verdict::BadParams(BadParams::QDivisibleByN)));
    }
    let gq = gcd(&qm, n);
    if !gq.is_one() {
        return Ok(Err(Verdict::Composite { factor: Some(gq) }));
    }
    Ok(Ok(jacobi(&params.d, n)?))
}

pub fn strong_lucas_round(n: &Natural, params: &LucasParams) -> Result<Verdict> {
    let eps = match screen(n, params)? {
        Ok(e) => e,
        Err(v) => return Ok(v),
    };
    let pass = with_ring!(n, |r| strong_check(
        &r,
        &r.from_int(&params.p),
        &r.from_int(&params.q),
        &r.from_int(&params.d),
        eps
    ));
    Ok(if pass { Verdict::ProbablePrime } else { Verdict::composite() })
}

pub fn lucas_round(n: &Natural, params: &LucasParams) -> Result<Verdict> {
    let eps = match screen(n, params)? {
        Ok(e) => e,
        Err(v) => return Ok(v),
    };
    let pass = with_ring!(n, |r| weak_check(
        &r,
        &r.from_int(&params.p),
        &r.from_int(&params.q),
        &r.from_int(&params.d),
        eps
    ));
    Ok(if pass { Verdict::ProbablePrime } else { Verdict::composite() })
}

pub const SAMPLE_ATTEMPTS: u32 = 128;

/// Draws `P` uniformly from `[0, n)` and sets `Q ≡ (P^2 - D)/4 (mod n)`,
/// redrawing while `gcd(Q, n) > 1`.
pub fn sample_params<G: Rng + ?Sized>(n: &Natural, d: &BigInt, rng: &mut G) -> Result<LucasParams> {
    check_odd_modulus(n, 3)?;
    let dm = reduce(d, n);
    if !gcd(&dm, n).is_one() {
        return invalid(format!("gcd(n, 2D) must be 1 (D = {d})"));
    }
    let inv2 = (n + 1u32) >> 1;
    let inv4 = (&inv2 * &inv2) % n;
    for _ in 0..SAMPLE_ATTEMPTS {
        let p = rng.gen_biguint_below(n);
        let num = reduce(&(BigInt::from(&p * &p) - d), n);
        let q: Natural = (num * &inv4) % n;
        if q.is_zero() || !gcd(&q, n).is_one() {
            continue;
        }
        return Ok(LucasParams::with_discriminant(p, q, d.clone()));
    }
    Err(Error::NoAdmissibleParams(SAMPLE_ATTEMPTS))
}

pub const D_SEARCH_LIMIT: u32 = 64;

/// The i-th discriminant of a method's sequence, from i = 0.
pub fn d_candidate(method: DMethod, i: u32) -> i64 {
    match method {
        DMethod::A => {
            let mag = 5 + 2 * i as i64;
            if i % 2 == 0 {
                mag
            } else {
                -mag
            }
        }
        DMethod::B => 5 + 4 * i as i64,
    }
}

/// First `D` of the method's sequence with `jacobi(D, n) = -1`, with its
/// `P` and `Q`.
pub fn select_d(n: &Natural, method: DMethod) -> Result<LucasParams> {
    check_odd_modulus(n, 3)?;
    for i in 0..D_SEARCH_LIMIT {
        let d = d_candidate(method, i);
        if jacobi(&BigInt::from(d), n)? != -1 {
            continue;
        }
        let (p, q) = match method {
            DMethod::A => (1i64, (1 - d) / 4),
            DMethod::B => {
                let s = (d as u64).sqrt() as i64;
                let p = if (s + 1) % 2 == 1 { s + 1 } else { s + 2 };
                (p, (p * p - d) / 4)
            }
        };
        return Ok(LucasParams::with_discriminant(p, q, d));
    }
    if is_perfect_square(n) {
        return Err(Error::PerfectSquare(n.clone()));
    }
    Err(Error::DSearchOverflow(D_SEARCH_LIMIT))
}

/// `jacobi(D, n)` for a machine-word `D`.
pub fn epsilon(d: i64, n: &Natural) -> Result<i8> {
    jacobi(&BigInt::from(d), n)
}
