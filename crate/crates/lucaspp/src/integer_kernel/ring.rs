//! Residue rings modulo an odd `n`. `U64Ring` is the fast path for moduli
//! below 2^64; `BigRing` handles everything else. Lucas and Miller-Rabin
//! code is written once against [`ModRing`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub trait ModRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn modulus(&self) -> BigUint;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_natural(&self, x: &BigUint) -> Self::Elem;
    fn from_int(&self, x: &BigInt) -> Self::Elem;
    fn to_natural(&self, x: &Self::Elem) -> BigUint;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / 2`; the modulus is odd so 2 is a unit.
    fn half(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn sqr(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, base: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.sqr(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, base);
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy)]
pub struct U64Ring {
    n: u64,
}

impl U64Ring {
    pub fn new(n: u64) -> Self {
        assert!(n % 2 == 1, "ring modulus must be odd");
        U64Ring { n }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn pow_u64(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.n;
        let mut b = base % self.n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl ModRing for U64Ring {
    type Elem = u64;

    fn modulus(&self) -> BigUint {
        BigUint::from(self.n)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn from_natural(&self, x: &BigUint) -> u64 {
        (x % self.n).to_u64().unwrap()
    }
    fn from_int(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.n)).to_u64().unwrap()
    }
    fn to_natural(&self, x: &u64) -> BigUint {
        BigUint::from(*x)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.n - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn half(&self, a: &u64) -> u64 {
        if a & 1 == 0 {
            a >> 1
        } else {
            // (a + n) / 2 without overflow
            (a >> 1) + (self.n >> 1) + 1
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Debug, Clone)]
pub struct BigRing {
    n: BigUint,
    n_int: BigInt,
}

impl BigRing {
    pub fn new(n: BigUint) -> Self {
        assert!(n.is_odd(), "ring modulus must be odd");
        let n_int = BigInt::from(n.clone());
        BigRing { n, n_int }
    }
}

impl ModRing for BigRing {
    type Elem = BigUint;

    fn modulus(&self) -> BigUint {
        self.n.clone()
    }
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one() % &self.n
    }
    fn from_natural(&self, x: &BigUint) -> BigUint {
        x % &self.n
    }
    fn from_int(&self, x: &BigInt) -> BigUint {
        x.mod_floor(&self.n_int).magnitude().clone()
    }
    fn to_natural(&self, x: &BigUint) -> BigUint {
        x.clone()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.n {
            s - &self.n
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.n - (b - a)
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.n
    }
    fn half(&self, a: &BigUint) -> BigUint {
        if a.is_even() {
            a >> 1
        } else {
            (a + &self.n) >> 1
        }
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn pow(&self, base: &BigUint, e: &BigUint) -> BigUint {
        base.modpow(e, &self.n)
    }
}

/// Runs `$body` with `$r` bound to the cheapest ring for modulus `$n`.
macro_rules! with_ring {
    ($n:expr, |$r:ident| $body:expr) => {{
        let n_ref: &::num_bigint::BigUint = $n;
        match ::num_traits::ToPrimitive::to_u64(n_ref) {
            Some(v) => {
                let $r = $crate::integer_kernel::ring::U64Ring::new(v);
                $body
            }
            None => {
                let $r = $crate::integer_kernel::ring::BigRing::new(n_ref.clone());
                $body
            }
        }
    }};
}
pub(crate) use with_ring;
