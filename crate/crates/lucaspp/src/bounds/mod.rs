//! Error-probability bounds for the uniform-choice and incremental-search
//! generators, set-size estimates, and the tables built from them.

mod exact;
mod tables;

pub use exact::{default_d_scan, exact_qk1, ExactDTranscript, ExactDValue, ExactEntry, ExactQk1, EXACT_QK1_MAX_K};
pub use tables::{emit_table, fmt_upper, single_bound, Cell, Format, SingleBound, Table, TableOptions};

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{capacity, invalid, Result};
use crate::integer_kernel::{count_primes, first_odd_primes, sieve_primes};

/// Constant in the lower bound `0.71867 * 2^k / k` for k-bit primes.
pub const PRIME_DENSITY: f64 = 0.71867;

/// Largest `k` for which set sizes and prime counts are enumerated.
pub const EXACT_SIZE_LIMIT: u32 = 29;

/// `1 + 1/p`, `p` the `(l+1)`-th odd prime.
pub fn rho(l: usize) -> Result<BigRational> {
    if l == 0 {
        return invalid("rho needs l >= 1");
    }
    let p = first_odd_primes(l + 1)[l];
    Ok(BigRational::new(BigInt::from(p + 1), BigInt::from(p)))
}

pub fn rho_f64(l: usize) -> Result<f64> {
    if l == 0 {
        return invalid("rho needs l >= 1");
    }
    Ok(1.0 + 1.0 / first_odd_primes(l + 1)[l] as f64)
}

pub fn prime_lower_bound(k: u32) -> f64 {
    PRIME_DENSITY * 2f64.powi(k as i32) / k as f64
}

/// Primes in `[2^(k-1), 2^k)`.
pub fn prime_count_exact(k: u32) -> Result<u64> {
    if k == 0 || k > EXACT_SIZE_LIMIT {
        return capacity(format!("exact prime count at k = {k}"), EXACT_SIZE_LIMIT as u64);
    }
    count_primes(1 << (k - 1), 1 << k)
}

/// Admissible split parameters `3 <= M <= 2 sqrt(k-1) - 1`.
pub fn m_range(k: u32) -> RangeInclusive<u32> {
    let hi = (2.0 * (k.max(1) as f64 - 1.0).sqrt() - 1.0).floor();
    3..=(hi.max(2.0) as u32)
}

fn check_m(k: u32, m: u32) -> Result<()> {
    if !m_range(k).contains(&m) {
        return invalid(format!("M = {m} outside {:?} for k = {k}", m_range(k)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: f64,
    pub m_opt: u32,
    pub terms: Vec<Term>,
    pub source: String,
}

impl BoundReport {
    fn from_terms(source: &str, m: u32, terms: &[(&str, f64)]) -> Self {
        BoundReport {
            value: terms.iter().map(|t| t.1).sum(),
            m_opt: m,
            terms: terms
                .iter()
                .map(|&(label, value)| Term {
                    label: label.to_string(),
                    value,
                })
                .collect(),
            source: source.to_string(),
        }
    }
}

/// Knobs shared by the single-row evaluators and the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundConfig {
    pub k: u32,
    pub t: u32,
    pub l: usize,
    /// `None` optimizes over the admissible range.
    pub m: Option<u32>,
    pub c: f64,
}

impl BoundConfig {
    pub fn new(k: u32, t: u32) -> Self {
        BoundConfig {
            k,
            t,
            l: 8,
            m: None,
            c: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sizing {
    /// `|M_{k,l}| <= 2^(k-2.9)`, primes from the density bound.
    Lemma7,
    Exact,
}

/// Cardinalities used as inputs to the bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetSizes {
    pub k: u32,
    pub l: usize,
    pub sizing: Sizing,
    /// Odd k-bit integers off the first `l` odd primes, twin products removed.
    pub m: f64,
    /// Same without removing twin products.
    pub m_tilde: f64,
    pub primes: f64,
}

impl SetSizes {
    pub fn lemma7(k: u32, l: usize) -> Self {
        let m = 2f64.powf(k as f64 - 2.9);
        SetSizes {
            k,
            l,
            sizing: Sizing::Lemma7,
            m,
            m_tilde: m,
            primes: prime_lower_bound(k),
        }
    }

    pub fn exact(k: u32, l: usize) -> Result<Self> {
        let m_tilde = m_tilde_exact(k, l)?;
        let twins = twin_products(k, l)?;
        Ok(SetSizes {
            k,
            l,
            sizing: Sizing::Exact,
            m: (m_tilde - twins) as f64,
            m_tilde: m_tilde as f64,
            primes: prime_count_exact(k)? as f64,
        })
    }
}

fn k_bit_window(k: u32) -> Result<(u64, u64)> {
    if !(2..=EXACT_SIZE_LIMIT).contains(&k) {
        return capacity(format!("exact set sizes at k = {k}"), EXACT_SIZE_LIMIT as u64);
    }
    Ok((1 << (k - 1), 1 << k))
}

/// Odd integers in `[2^(k-1), 2^k)` divisible by none of the first `l` odd
/// primes, by inclusion-exclusion.
pub fn m_tilde_exact(k: u32, l: usize) -> Result<u64> {
    let (lo, hi) = k_bit_window(k)?;
    if l > 20 {
        return invalid("inclusion-exclusion over more than 20 primes");
    }
    let ps = first_odd_primes(l);
    // odd multiples of d in [1, x]
    let odd_mult = |x: u64, d: u64| (x / d + 1) / 2;
    let mut total: i64 = 0;
    for mask in 0u32..(1 << l) {
        let mut d = 1u64;
        for (i, p) in ps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d = d.saturating_mul(*p);
            }
        }
        let c = (odd_mult(hi - 1, d) - odd_mult(lo - 1, d)) as i64;
        total += if mask.count_ones() % 2 == 1 { -c } else { c };
    }
    Ok(total as u64)
}

/// Twin-prime products `p(p+2)` in the k-bit window with `p` beyond the
/// first `l` odd primes.
pub fn twin_products(k: u32, l: usize) -> Result<u64> {
    let (lo, hi) = k_bit_window(k)?;
    let floor = *first_odd_primes(l.max(1)).last().unwrap();
    let primes = sieve_primes((hi as f64).sqrt() as u64 + 3)?;
    Ok(primes
        .windows(2)
        .filter(|w| w[1] == w[0] + 2 && w[0] > floor)
        .filter(|w| (lo..hi).contains(&(w[0] * w[1])))
        .count() as u64)
}

/// Inclusion-exclusion bounds on odd k-bit integers coprime to 15, with the
/// enumerated count when `k` is small enough.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MTildeSizes {
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<u64>,
}

pub fn m_tilde_sizes(k: u32) -> MTildeSizes {
    MTildeSizes {
        k,
        lower: 2f64.powf(k as f64 - 2.92),
        upper: 2f64.powf(k as f64 - 2.9),
        exact: m_tilde_exact(k, 2).ok(),
    }
}

/// `q_{k,r} <= N_r / (N_r + P)`.
pub fn qkr_upper(n_r: f64, p: f64) -> f64 {
    if n_r == 0.0 {
        return 0.0;
    }
    n_r / (n_r + p)
}

/// `q_{k,t} <= (4/15)^(t-r) q_r / (1 - q_r)`.
pub fn chain_rule(q_r: f64, r: u32, t: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&q_r) {
        return invalid(format!("chain rule needs 0 <= q < 1, got {q_r}"));
    }
    if r >= t {
        return invalid(format!("chain rule needs r < t, got r = {r}, t = {t}"));
    }
    Ok((4.0f64 / 15.0).powi((t - r) as i32) * q_r / (1.0 - q_r))
}

/// `(4/15)^t` once `q_1 <= 4/19`; `None` otherwise.
pub fn all_t_bound(q1: f64, t: u32) -> Option<f64> {
    (q1 <= 4.0 / 19.0).then(|| (4.0f64 / 15.0).powi(t as i32))
}

/// `k^2 4^(1.8 - sqrt k) rho^(2 sqrt(k-1) - 2)`.
pub fn qk1_analytic(k: u32, l: usize) -> Result<f64> {
    if k < 2 {
        return invalid("qk1_analytic needs k >= 2");
    }
    let kf = k as f64;
    Ok(kf * kf * 4f64.powf(1.8 - kf.sqrt()) * rho_f64(l)?.powf(2.0 * (kf - 1.0).sqrt() - 2.0))
}

/// Two-term bound on the weighted composite count for one round.
pub fn n1_bound_lemma8(k: u32, l: usize, m: u32) -> Result<BoundReport> {
    check_m(k, m)?;
    let (kf, mf, r) = (k as f64, m as f64, rho_f64(l)?);
    let tail = 2f64.powf(kf - 1.9 - mf) * r.powi(m as i32 + 1) / (2.0 - r);
    let head = 2f64.powf(kf - 2.0 * (kf - 1.0).sqrt()) * r.powi(m as i32) * mf * (mf - 1.0);
    Ok(BoundReport::from_terms("lemma8", m, &[("tail", tail), ("head", head)]))
}

/// Tighter one-round bound with an explicit `|M_{k,l}|`.
pub fn n1_bound_lemma10(k: u32, l: usize, m: u32, m_size: f64) -> Result<BoundReport> {
    check_m(k, m)?;
    let r = rho_f64(l)?;
    let kf = k as f64;
    let tail = 2f64.powi(1 - m as i32) * r.powi(m as i32 + 1) / (2.0 - r) * m_size;
    let mut head = 0.0;
    for mm in 2..=m {
        let inner: f64 = (2..=mm)
            .map(|j| (2f64.powi((mm + 1 - j) as i32) - 1.0) / (2f64.powf((kf - 1.0) / j as f64) - 1.0))
            .sum();
        head += (r / 2.0).powi(mm as i32) * inner;
    }
    head *= 2f64.powf(kf);
    Ok(BoundReport::from_terms("lemma10", m, &[("tail", tail), ("head", head)]))
}

/// Cardinality bounds for `C_{m,D}` intersected with the two halves of the
/// `d`-split of `M_{k,l}`.
pub fn cmd_bounds(k: u32, l: usize, m: u32) -> Result<(f64, f64)> {
    let kf = k as f64;
    if m < 2 || (m + 1) as f64 > 2.0 * (kf - 1.0).sqrt() {
        return invalid(format!("need 2 <= m and m + 1 <= 2 sqrt(k-1), got m = {m}, k = {k}"));
    }
    let ps = first_odd_primes(l + m as usize);
    let den = |j: u32| 2f64.powf((kf - 1.0) / j as f64) + 1.0;
    let d1: f64 = (2..=m)
        .map(|j| {
            let prod: f64 = ps[l..l + j as usize].iter().map(|&p| p as f64).product();
            3.0 / prod / den(j)
        })
        .sum();
    let d2: f64 = (2..=m.saturating_sub(2))
        .map(|j| (2f64.powi((m + 1 - j) as i32) - 4.0) / den(j))
        .sum();
    let scale = 2f64.powf(kf);
    Ok((scale * d1, scale * d2))
}

/// Bound on the `r`-th moment sum used for `q_{k,r}`.
pub fn nr_bound_theorem16(k: u32, l: usize, m: u32, r: u32, m_size: f64) -> Result<BoundReport> {
    check_m(k, m)?;
    if r == 0 {
        return invalid("round count must be >= 1");
    }
    let rh = rho_f64(l)?;
    let ri = r as i32;
    let tail = 2f64.powi(ri * (1 - m as i32)) * m_size * rh.powi((m as i32 + 1) * ri)
        / (2f64.powi(ri) - rh.powi(ri));
    let (mut s1, mut s2) = (0.0, 0.0);
    for mm in 2..=m {
        let w = (rh / 2.0).powi(mm as i32 * ri);
        let (d1, d2) = cmd_bounds(k, l, mm)?;
        s1 += w * d1;
        s2 += w * d2;
    }
    let lift = 2f64.powi(ri);
    Ok(BoundReport::from_terms(
        "theorem16 (exponent normalized to r)",
        m,
        &[("tail", tail), ("d1", lift * s1), ("d2", lift * s2)],
    ))
}

/// Smallest value over the admissible `M` range; ties go to the smaller `M`.
pub fn optimize_m<F>(k: u32, mut f: F) -> Result<(u32, f64)>
where
    F: FnMut(u32) -> Result<f64>,
{
    let mut best: Option<(u32, f64)> = None;
    for m in m_range(k) {
        let v = f(m)?;
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((m, v));
        }
    }
    match best {
        Some(b) => Ok(b),
        None => invalid(format!("no admissible M for k = {k}")),
    }
}

/// One optimized row of a `q_{k,r}` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QRow {
    pub k: u32,
    pub r: u32,
    pub m_opt: u32,
    pub value: f64,
    pub source: String,
}

fn q_row<F>(k: u32, r: u32, p: f64, source: &str, mut n: F) -> Result<QRow>
where
    F: FnMut(u32) -> Result<BoundReport>,
{
    let (m_opt, value) = optimize_m(k, |m| Ok(qkr_upper(n(m)?.value, p)))?;
    Ok(QRow {
        k,
        r,
        m_opt,
        value,
        source: source.to_string(),
    })
}

pub fn q_lemma8(k: u32, l: usize) -> Result<QRow> {
    q_row(k, 1, prime_lower_bound(k), "lemma8", |m| n1_bound_lemma8(k, l, m))
}

pub fn q_lemma10(k: u32, l: usize, sizes: &SetSizes) -> Result<QRow> {
    q_row(k, 1, sizes.primes, "lemma10", |m| n1_bound_lemma10(k, l, m, sizes.m))
}

/// Uses `|M~_{k,l}|`, which is what reproduces the exact-size table.
pub fn q_theorem16(k: u32, l: usize, r: u32, sizes: &SetSizes) -> Result<QRow> {
    q_row(k, r, sizes.primes, "theorem16", |m| nr_bound_theorem16(k, l, m, r, sizes.m_tilde))
}

/// Composite-output bound for one incremental window of `s = c ln(2^k)`.
pub fn ykts_bound(k: u32, t: u32, c: f64, m: Option<u32>) -> Result<BoundReport> {
    if t == 0 || c <= 0.0 {
        return invalid("need t >= 1 and c > 0");
    }
    let eval = |m: u32| -> Result<BoundReport> {
        check_m(k, m)?;
        let (kf, tf) = (k as f64, t as f64);
        let top = (1.2 * m as f64).ceil() as u32;
        let mut s = 0.0;
        for mm in 3..=top {
            let inner: f64 = (2..=mm).map(|j| 2f64.powf(-(j as f64) - (kf - 1.0) / j as f64)).sum();
            s += 2f64.powf(mm as f64 * (1.0 - tf)) * inner;
        }
        let window = 2f64.powf(3.42 + tf) * (c * kf).powi(2) * s;
        let tail = 0.7 * c * kf * 2f64.powf(-tf * m as f64);
        Ok(BoundReport::from_terms("theorem18", m, &[("window", window), ("tail", tail)]))
    };
    match m {
        Some(m) => eval(m),
        None => {
            let (m_opt, _) = optimize_m(k, |m| Ok(eval(m)?.value))?;
            eval(m_opt)
        }
    }
}

/// `floor(-log2 y)`, clamped at zero.
pub fn security_bits(y: f64) -> u32 {
    (-y.log2()).floor().max(0.0) as u32
}

/// `k^2 y + (1 - 5.3/k)^(k^2)` with `y` optimized over `M`.
pub fn ykts_total(k: u32, t: u32, c: f64) -> Result<f64> {
    if k < 6 {
        return invalid("ykts_total needs k >= 6");
    }
    let kf = k as f64;
    let y = ykts_bound(k, t, c, None)?.value;
    Ok(kf * kf * y + (1.0 - 5.3 / kf).powf(kf * kf))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCheck {
    pub lambda: f64,
    pub y: f64,
    pub envelope: f64,
    pub holds: bool,
}

/// `y <= lambda k^3 2^(-sqrt k)` for a caller-chosen `lambda`.
pub fn asymptotic_check_with(k: u32, t: u32, c: f64, lambda: f64) -> Result<AsymptoticCheck> {
    if k < 18 {
        return invalid("asymptotic check needs k >= 18");
    }
    let kf = k as f64;
    let y = ykts_bound(k, t, c, None)?.value;
    let envelope = lambda * kf.powi(3) * 2f64.powf(-kf.sqrt());
    Ok(AsymptoticCheck {
        lambda,
        y,
        envelope,
        holds: y <= envelope,
    })
}

/// Same with the witness `lambda = 2c^2 + 1`.
pub fn asymptotic_check(k: u32, t: u32, c: f64) -> Result<AsymptoticCheck> {
    asymptotic_check_with(k, t, c, 2.0 * c * c + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(2).unwrap(), BigRational::new(8.into(), 7.into()));
        assert_eq!(rho(8).unwrap(), BigRational::new(30.into(), 29.into()));
    }

    #[test]
    fn m_range_small() {
        assert_eq!(m_range(60), 3..=14);
        assert!(m_range(4).is_empty());
    }

    #[test]
    fn d2_vanishes_below_four() {
        assert_eq!(cmd_bounds(30, 8, 3).unwrap().1, 0.0);
        assert!(cmd_bounds(30, 8, 4).unwrap().1 > 0.0);
    }

    #[test]
    fn six_bit_set() {
        assert_eq!(m_tilde_exact(6, 2).unwrap(), 8);
    }
}
