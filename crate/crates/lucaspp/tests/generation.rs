mod common;

use lucaspp::generation::*;
use lucaspp::integer_kernel::{first_odd_primes, sieve_primes};
use lucaspp::Natural;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[test]
fn uniform_outputs_are_screened_k_bit_primes() {
    let screen = first_odd_primes(8);
    for seed in 0..40 {
        for (k, d) in [(16u32, 5i64), (24, -7), (40, 13)] {
            let cfg = GenConfig::uniform(k, 3, d, seed);
            let out = strong_luc_generate(&cfg, &mut cfg.rng()).unwrap();
            let n = out.prime().expect("uniform generation always returns");
            let v = n.to_u64().unwrap();
            assert_eq!(n.bits(), k as u64);
            assert_eq!(v % 2, 1);
            assert!(screen.iter().all(|&p| v % p != 0));
            assert!(common::is_prime_oracle(v), "{v}");
            assert!(out.rounds_run >= 3);
        }
    }
}

#[test]
fn incremental_window_without_candidates_fails() {
    // 115 = 5 * 23, 117 = 3^2 * 13
    let cfg = GenConfig::incremental(7, 2, 2, 0);
    let out = prime_inc_luc_from(&cfg, &Natural::from(115u32), &mut cfg.rng()).unwrap();
    assert_eq!(out.result, GenResult::Fail);
    assert_eq!(out.candidates_tested, 2);
    assert_eq!(out.rounds_run, 0);
}

#[test]
fn incremental_returns_next_prime() {
    let cfg = GenConfig::incremental(7, 4, 20, 0);
    let out = prime_inc_luc_from(&cfg, &Natural::from(115u32), &mut cfg.rng()).unwrap();
    assert_eq!(out.prime(), Some(&Natural::from(127u32)));
    assert_eq!(out.candidates_tested, 7);
    assert!(prime_inc_luc_from(&cfg, &Natural::from(116u32), &mut cfg.rng()).is_err());
}

#[test]
fn incremental_respects_window() {
    for seed in 0..200 {
        let cfg = GenConfig::incremental(20, 2, 10, seed);
        let out = prime_inc_luc(&cfg, &mut cfg.rng()).unwrap();
        assert!(out.candidates_tested <= 10);
        if let Some(p) = out.prime() {
            assert!(common::is_prime_oracle(p.to_u64().unwrap()));
        }
    }
}

#[test]
fn remainder_table_tracks_residues() {
    let primes: Vec<u64> = sieve_primes(100).unwrap().into_iter().skip(1).collect();
    let start = 1_000_000_007u64;
    let mut table = RemainderTable::new(&Natural::from(start), &primes);
    for step in 0..1000u64 {
        let n = start + 2 * step;
        let direct: Vec<u64> = primes.iter().map(|p| n % p).collect();
        assert_eq!(table.residues(), direct.as_slice(), "step {step}");
        assert_eq!(table.passes(), primes.iter().all(|p| n % p != 0));
        table.advance();
    }
    assert_eq!(table.primes(), primes.as_slice());
}

#[test]
fn seeded_runs_are_deterministic() {
    let mut cfg = GenConfig::uniform(64, 2, 5, 42);
    cfg.record_transcript = true;
    let a = strong_luc_generate(&cfg, &mut cfg.rng()).unwrap();
    let b = strong_luc_generate(&cfg, &mut cfg.rng()).unwrap();
    assert_eq!(a, b);
    let jsonl = a.transcript_jsonl();
    assert_eq!(jsonl.lines().count() as u64, a.candidates_tested);
    assert!(jsonl.lines().last().unwrap().contains("\"accepted\""));
    let c = strong_luc_generate(&GenConfig::uniform(64, 2, 5, 43), &mut ChaCha20Rng::seed_from_u64(43)).unwrap();
    assert_ne!(a.prime(), c.prime());
}

#[test]
fn incremental_transcript_bounded_by_window() {
    let mut cfg = GenConfig::incremental(32, 2, 50, 7);
    cfg.record_transcript = true;
    let out = prime_inc_luc(&cfg, &mut cfg.rng()).unwrap();
    let lines = out.transcript_jsonl().lines().count() as u64;
    assert_eq!(lines, out.candidates_tested);
    assert!(lines <= 50);
}

#[test]
fn iteration_cap_is_an_error() {
    let mut cfg = GenConfig::uniform(64, 2, 5, 1);
    cfg.max_candidates = 1;
    let mut hits = 0;
    for seed in 0..20 {
        cfg.seed = seed;
        if strong_luc_generate(&cfg, &mut cfg.rng()).is_err() {
            hits += 1;
        }
    }
    assert!(hits > 0);
}

#[test]
fn config_validation() {
    assert!(GenConfig::uniform(4, 1, 5, 0).validate().is_err());
    assert!(GenConfig::uniform(16, 0, 5, 0).validate().is_err());
    assert!(GenConfig::uniform(16, 1, 6, 0).validate().is_err());
    assert!(GenConfig::uniform(16, 1, 9, 0).validate().is_err());
    assert!(GenConfig::incremental(16, 1, 0, 0).validate().is_err());
    assert!(GenConfig::uniform(16, 1, -7, 0).validate().is_ok());
}

#[test]
fn random_odd_k_bit_shape() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    for k in [5u32, 17, 64, 300] {
        for _ in 0..50 {
            let n = random_odd_k_bit(k, &mut rng);
            assert_eq!(n.bits(), k as u64);
            assert!(n.bit(0));
        }
    }
}
