//! Prime generation: uniform-choice candidates screened and tested with
//! random-base strong Lucas rounds, and incremental search from one random
//! start.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::integer_kernel::{first_odd_primes, gcd, is_perfect_square, jacobi, to_hex, Natural};
use crate::lucas::{n_minus_eps, sample_params, select_d, strong_lucas_round, DMethod};

/// How each candidate's discriminant is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DPolicy {
    Fixed(i64),
    /// First Method A discriminant with `jacobi(D, n) = -1`, per candidate.
    MethodA,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub k: u32,
    pub t: u32,
    pub d: DPolicy,
    /// Number of leading odd primes screened by trial division.
    pub l: usize,
    /// Incremental window: candidates before giving up.
    pub s: u64,
    pub seed: u64,
    pub record_transcript: bool,
    /// Incremental search only: also demand `jacobi(D, n) = -1`.
    pub jacobi_screen: bool,
    /// Reject when `n - eps` is a perfect square. On by default for the
    /// uniform generator, off for incremental search.
    pub square_screen: bool,
    pub max_candidates: u64,
}

pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

impl GenConfig {
    pub fn uniform(k: u32, t: u32, d: i64, seed: u64) -> Self {
        GenConfig {
            k,
            t,
            d: DPolicy::Fixed(d),
            l: 8,
            s: 1,
            seed,
            record_transcript: false,
            jacobi_screen: true,
            square_screen: true,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn incremental(k: u32, t: u32, s: u64, seed: u64) -> Self {
        GenConfig {
            k,
            t,
            d: DPolicy::MethodA,
            l: 8,
            s,
            seed,
            record_transcript: false,
            jacobi_screen: false,
            square_screen: false,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 5 {
            return invalid(format!("bit size must be >= 5, got {}", self.k));
        }
        if self.t < 1 || self.s < 1 || self.l < 2 {
            return invalid("need t >= 1, s >= 1 and l >= 2");
        }
        if let DPolicy::Fixed(d) = self.d {
            let dm = d.rem_euclid(4);
            if dm > 1 {
                return invalid(format!("D = {d} is not 0 or 1 mod 4"));
            }
            if d >= 0 && is_perfect_square(&Natural::from(d as u64)) {
                return invalid(format!("D = {d} is a perfect square"));
            }
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

/// Why a candidate was dropped, or that it was accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Jacobi,
    Gcd,
    TrialDivision,
    Square,
    LucasRound,
    Accepted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    /// Candidate in `0x` hex.
    pub value: String,
    pub stage: Stage,
    pub rounds_passed: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenResult {
    ProbablePrime(Natural),
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenOutcome {
    pub result: GenResult,
    pub candidates_tested: u64,
    pub rounds_run: u64,
    pub transcript: Option<Vec<TranscriptEntry>>,
}

impl GenOutcome {
    pub fn prime(&self) -> Option<&Natural> {
        match &self.result {
            GenResult::ProbablePrime(n) => Some(n),
            GenResult::Fail => None,
        }
    }

    /// One JSON object per line.
    pub fn transcript_jsonl(&self) -> String {
        let mut out = String::new();
        for e in self.transcript.iter().flatten() {
            out.push_str(&serde_json::to_string(e).expect("transcript entries serialize"));
            out.push('\n');
        }
        out
    }
}

/// Odd `k`-bit integer, uniform over that set.
pub fn random_odd_k_bit<G: Rng + ?Sized>(k: u32, rng: &mut G) -> Natural {
    let mut n = rng.gen_biguint(k as u64 - 1);
    n.set_bit(k as u64 - 1, true);
    n.set_bit(0, true);
    n
}

/// Residues `n mod p` kept current while `n` steps by 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderTable {
    primes: Vec<u64>,
    residues: Vec<u64>,
}

impl RemainderTable {
    pub fn new(n0: &Natural, primes: &[u64]) -> Self {
        let residues = primes.iter().map(|&p| (n0 % p).to_u64().unwrap()).collect();
        RemainderTable {
            primes: primes.to_vec(),
            residues,
        }
    }

    /// Moves to `n + 2` with one add and compare per prime.
    pub fn advance(&mut self) {
        for (r, &p) in self.residues.iter_mut().zip(&self.primes) {
            *r += 2;
            if *r >= p {
                *r -= p;
            }
        }
    }

    /// No stored residue is zero.
    pub fn passes(&self) -> bool {
        self.residues.iter().all(|&r| r != 0)
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

struct Recorder {
    entries: Option<Vec<TranscriptEntry>>,
}

impl Recorder {
    fn new(on: bool) -> Self {
        Recorder {
            entries: on.then(Vec::new),
        }
    }

    fn push(&mut self, n: &Natural, stage: Stage, rounds_passed: u32) {
        if let Some(e) = self.entries.as_mut() {
            e.push(TranscriptEntry {
                value: to_hex(n),
                stage,
                rounds_passed,
            });
        }
    }
}

// Discriminant for this candidate, or the stage that rejects it.
fn discriminant(n: &Natural, policy: DPolicy) -> std::result::Result<(i64, i8), Stage> {
    match policy {
        DPolicy::Fixed(d) => {
            let e = jacobi(&BigInt::from(d), n).map_err(|_| Stage::Gcd)?;
            Ok((d, e))
        }
        DPolicy::MethodA => match select_d(n, DMethod::A) {
            Ok(p) => Ok((p.d.to_i64().expect("small D"), -1)),
            Err(_) => Err(Stage::Square),
        },
    }
}

// t random-base strong Lucas rounds; returns how many passed.
fn run_rounds<G: Rng + ?Sized>(n: &Natural, d: i64, t: u32, rng: &mut G, rounds_run: &mut u64) -> u32 {
    let dd = BigInt::from(d);
    for i in 0..t {
        *rounds_run += 1;
        let Ok(params) = sample_params(n, &dd, rng) else {
            return i;
        };
        match strong_lucas_round(n, &params) {
            Ok(v) if v.is_probable_prime() => {}
            _ => return i,
        }
    }
    t
}

/// Uniform-choice generation: draw, screen, test `t` rounds, repeat.
pub fn strong_luc_generate<G: Rng + ?Sized>(cfg: &GenConfig, rng: &mut G) -> Result<GenOutcome> {
    cfg.validate()?;
    let screen = first_odd_primes(cfg.l);
    let mut rec = Recorder::new(cfg.record_transcript);
    let (mut tested, mut rounds_run) = (0u64, 0u64);
    loop {
        if tested >= cfg.max_candidates {
            return Err(Error::IterationCap(tested));
        }
        tested += 1;
        let n = random_odd_k_bit(cfg.k, rng);
        let (d, e) = match discriminant(&n, cfg.d) {
            Ok(x) => x,
            Err(stage) => {
                rec.push(&n, stage, 0);
                continue;
            }
        };
        if e != -1 {
            rec.push(&n, Stage::Jacobi, 0);
            continue;
        }
        if !gcd(&Natural::from(d.unsigned_abs()), &n).is_one() {
            rec.push(&n, Stage::Gcd, 0);
            continue;
        }
        if screen.iter().any(|&p| (&n % p).to_u64() == Some(0)) {
            rec.push(&n, Stage::TrialDivision, 0);
            continue;
        }
        if cfg.square_screen && is_perfect_square(&n_minus_eps(&n, e)) {
            rec.push(&n, Stage::Square, 0);
            continue;
        }
        let passed = run_rounds(&n, d, cfg.t, rng, &mut rounds_run);
        if passed < cfg.t {
            rec.push(&n, Stage::LucasRound, passed);
            continue;
        }
        rec.push(&n, Stage::Accepted, passed);
        return Ok(GenOutcome {
            result: GenResult::ProbablePrime(n),
            candidates_tested: tested,
            rounds_run,
            transcript: rec.entries,
        });
    }
}

/// Incremental search: one random odd start `n0`, then `n0 + 2`, ...,
/// returning `Fail` once `s` candidates are used up.
pub fn prime_inc_luc<G: Rng + ?Sized>(cfg: &GenConfig, rng: &mut G) -> Result<GenOutcome> {
    cfg.validate()?;
    let n0 = random_odd_k_bit(cfg.k, rng);
    prime_inc_luc_from(cfg, &n0, rng)
}

/// Incremental search from a caller-chosen odd start.
pub fn prime_inc_luc_from<G: Rng + ?Sized>(cfg: &GenConfig, n0: &Natural, rng: &mut G) -> Result<GenOutcome> {
    cfg.validate()?;
    if n0.is_even() {
        return invalid("incremental search needs an odd start");
    }
    let mut table = RemainderTable::new(n0, &[3, 5]);
    let mut rec = Recorder::new(cfg.record_transcript);
    let mut rounds_run = 0u64;
    let mut n = n0.clone();
    for i in 0..cfg.s {
        if i > 0 {
            n += 2u32;
            table.advance();
        }
        debug_assert!(n.is_odd(), "candidates stay odd");
        if !table.passes() {
            rec.push(&n, Stage::TrialDivision, 0);
            continue;
        }
        let (d, e) = match discriminant(&n, cfg.d) {
            Ok(x) => x,
            Err(stage) => {
                rec.push(&n, stage, 0);
                continue;
            }
        };
        if e == 0 {
            rec.push(&n, Stage::Gcd, 0);
            continue;
        }
        if cfg.jacobi_screen && e != -1 {
            rec.push(&n, Stage::Jacobi, 0);
            continue;
        }
        if cfg.square_screen && is_perfect_square(&n_minus_eps(&n, e)) {
            rec.push(&n, Stage::Square, 0);
            continue;
        }
        let passed = run_rounds(&n, d, cfg.t, rng, &mut rounds_run);
        if passed < cfg.t {
            rec.push(&n, Stage::LucasRound, passed);
            continue;
        }
        rec.push(&n, Stage::Accepted, passed);
        return Ok(GenOutcome {
            result: GenResult::ProbablePrime(n),
            candidates_tested: i + 1,
            rounds_run,
            transcript: rec.entries,
        });
    }
    Ok(GenOutcome {
        result: GenResult::Fail,
        candidates_tested: cfg.s,
        rounds_run,
        transcript: rec.entries,
    })
}
