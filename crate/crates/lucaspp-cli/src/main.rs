//! `lucaspp`: probable-prime tests, prime generation, pseudoprime counts and
//! bound tables.
//!
//! Exit status is 0 for a probable prime or success, 1 for composite or a
//! failed generation window, 2 for usage and runtime errors. Diagnostics go
//! to stderr; stdout only carries results.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lucaspp::bounds::{default_d_scan, emit_table, exact_qk1, fmt_upper, single_bound, Format, TableOptions};
use lucaspp::classical_tests::{baillie_psw, fermat_round, miller_rabin_round, DEFAULT_TRIAL_LIMIT};
use lucaspp::counting::{alpha_bar, fermat_count, lucas_count, mr_count, sl_count};
use lucaspp::generation::{prime_inc_luc, strong_luc_generate, GenConfig, GenOutcome, GenResult};
use lucaspp::integer_kernel::{factorize, gcd, is_perfect_square, parse_integer, parse_natural};
use lucaspp::lucas::{lucas_round, sample_params, select_d, strong_lucas_round};
use lucaspp::{DMethod, LucasParams, Natural, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[derive(Parser)]
#[command(name = "lucaspp", version, about = "Strong Lucas probable-prime tests and their error bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a probable-prime test on n.
    Test(TestArgs),
    /// Generate a probable prime.
    ///
    /// With --transcript, each candidate is written as one JSON object per
    /// line: {"value": "0x..", "stage": "...", "rounds_passed": N}.
    Generate(GenerateArgs),
    /// Count pseudoprime parameters or bases for n (n < 2^52).
    Count(CountArgs),
    /// Regenerate bound tables or evaluate a single bound.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Lucas,
    StrongLucas,
    MillerRabin,
    Fermat,
    Bpsw,
}

#[derive(Args)]
struct TestArgs {
    /// Odd integer >= 5, decimal or 0x-hex.
    n: String,
    #[arg(long, value_enum, default_value = "strong-lucas")]
    method: Method,
    /// Rounds with independently drawn parameters or bases (ignored by bpsw).
    #[arg(long, default_value_t = 1)]
    rounds: u32,
    /// Discriminant for the Lucas methods; Method A picks one when absent.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// RNG seed; a fresh one is drawn (and reported on stderr) when absent.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Uniform,
    Incremental,
}

#[derive(Args)]
struct GenerateArgs {
    /// Bit size k.
    #[arg(long)]
    bits: u32,
    /// Strong Lucas rounds t per candidate.
    #[arg(long, default_value_t = 1)]
    rounds: u32,
    #[arg(long, value_enum, default_value = "uniform")]
    mode: Mode,
    /// Incremental window s.
    #[arg(long, default_value_t = 1)]
    window: u64,
    /// Fixed discriminant for uniform mode.
    #[arg(long, allow_hyphen_values = true, default_value_t = 5)]
    d: i64,
    /// Odd primes used for trial division in uniform mode.
    #[arg(long, default_value_t = 8)]
    l: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Incremental mode: also require jacobi(D, n) = -1.
    #[arg(long)]
    jacobi_screen: bool,
    /// Incremental mode: also reject n with n - eps a perfect square.
    #[arg(long)]
    square_screen: bool,
    #[arg(long, default_value_t = lucaspp::generation::DEFAULT_MAX_CANDIDATES)]
    max_candidates: u64,
    /// Write the candidate transcript here as JSON lines.
    #[arg(long)]
    transcript: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// Strong Lucas pairs (P, Q).
    Sl,
    /// Fermat bases.
    F,
    /// Lucas pairs.
    L,
    /// Strong (Miller-Rabin) bases.
    Mr,
    /// SL(D, n) / (n - eps - 1), as p/q and 6 decimals.
    Alpha,
}

#[derive(Args)]
struct CountArgs {
    n: String,
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Tsv,
    Json,
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("target").required(true).args(["table", "single", "exact_q"])))]
struct BoundsArgs {
    /// Table number 1..6.
    #[arg(long)]
    table: Option<u8>,
    /// Bound on q_{k,t}: two values, k then t.
    #[arg(long, num_args = 2, value_names = ["K", "T"])]
    single: Option<Vec<u32>>,
    /// Exact q_{k,r} by enumeration for 2 <= k <= 16, with per-D breakdown (JSON).
    #[arg(long, value_name = "K")]
    exact_q: Option<u32>,
    /// Rounds r for --exact-q.
    #[arg(long, default_value_t = 1)]
    rounds: u32,
    /// Keep twin-prime products in the --exact-q enumeration.
    #[arg(long)]
    include_twins: bool,
    /// Odd primes excluded by trial division.
    #[arg(long, default_value_t = 8)]
    l: usize,
    /// Table 6 window constant; all of 1, 5, 10 when absent.
    #[arg(long)]
    c: Option<u32>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: OutFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<lucaspp::Error> for Failure {
    fn from(e: lucaspp::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Test(a) => cmd_test(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Count(a) => cmd_count(a),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

// A fresh seed is reported so the run can be replayed.
fn pick_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed={s}");
        s
    })
}

fn verdict_code(prime: bool) -> ExitCode {
    println!("{}", if prime { "probable prime" } else { "composite" });
    ExitCode::from(if prime { 0 } else { 1 })
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::ProbablePrime => "probable prime".into(),
        Verdict::Composite { factor: Some(f) } => format!("composite (factor {f})"),
        Verdict::Composite { factor: None } => "composite".into(),
        Verdict::BadParams(b) => format!("bad parameters ({b})"),
    }
}

fn cmd_test(a: TestArgs) -> Outcome {
    let n = parse_natural(&a.n).map_err(|e| Failure::Usage(e.to_string()))?;
    if n < Natural::from(5u32) || !n.bit(0) {
        return Err(Failure::Usage(format!("n must be odd and >= 5, got {n}")));
    }
    if a.rounds == 0 {
        return Err(Failure::Usage("--rounds must be >= 1".into()));
    }
    let mut log = Vec::new();
    let prime = match a.method {
        Method::Bpsw => {
            let v = baillie_psw(&n, DMethod::A, true, DEFAULT_TRIAL_LIMIT);
            log.push(format!("bpsw method=A strong=true -> {}", describe(&v)));
            v.is_probable_prime()
        }
        Method::Fermat | Method::MillerRabin => {
            let mut rng = ChaCha20Rng::seed_from_u64(pick_seed(a.seed));
            let mut ok = true;
            for i in 1..=a.rounds {
                let base = rng.gen_range(Natural::from(2u32)..&n - 1u32);
                let v = match a.method {
                    Method::Fermat => fermat_round(&n, &base)?,
                    _ => miller_rabin_round(&n, &base)?,
                };
                log.push(format!("round {i}: a={base} -> {}", describe(&v)));
                if !v.is_probable_prime() {
                    ok = false;
                    break;
                }
            }
            ok
        }
        Method::Lucas | Method::StrongLucas => {
            let mut rng = ChaCha20Rng::seed_from_u64(pick_seed(a.seed));
            lucas_rounds(&a, &n, &mut rng, &mut log)?
        }
    };
    // verdict on line 1, then the per-round log
    let code = verdict_code(prime);
    for line in &log {
        println!("{line}");
    }
    Ok(code)
}

fn lucas_rounds(a: &TestArgs, n: &Natural, rng: &mut ChaCha20Rng, log: &mut Vec<String>) -> Result<bool, Failure> {
    let d = match &a.d {
        Some(s) => parse_integer(s).map_err(|e| Failure::Usage(e.to_string()))?,
        None => {
            if is_perfect_square(n) {
                log.push("n is a perfect square".into());
                return Ok(false);
            }
            select_d(n, DMethod::A)?.d
        }
    };
    let dmag = Natural::from(d.magnitude().clone());
    let g = gcd(&dmag, n);
    if g != Natural::from(1u32) {
        if &g < n {
            log.push(format!("gcd(D, n) = {g}"));
            return Ok(false);
        }
        return Err(Failure::Usage(format!("D = {d} is divisible by n")));
    }
    for i in 1..=a.rounds {
        let params: LucasParams = sample_params(n, &d, rng)?;
        let v = match a.method {
            Method::Lucas => lucas_round(n, &params)?,
            _ => strong_lucas_round(n, &params)?,
        };
        log.push(format!("round {i}: P={} Q={} D={} -> {}", params.p, params.q, params.d, describe(&v)));
        if !v.is_probable_prime() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cmd_generate(a: GenerateArgs) -> Outcome {
    let seed = pick_seed(a.seed);
    let mut cfg = match a.mode {
        Mode::Uniform => {
            let mut c = GenConfig::uniform(a.bits, a.rounds, a.d, seed);
            c.l = a.l;
            c
        }
        Mode::Incremental => {
            let mut c = GenConfig::incremental(a.bits, a.rounds, a.window, seed);
            c.jacobi_screen = a.jacobi_screen;
            c.square_screen = a.square_screen;
            c
        }
    };
    cfg.max_candidates = a.max_candidates;
    cfg.record_transcript = a.transcript.is_some();
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let mut rng = cfg.rng();
    let out: GenOutcome = match a.mode {
        Mode::Uniform => strong_luc_generate(&cfg, &mut rng)?,
        Mode::Incremental => prime_inc_luc(&cfg, &mut rng)?,
    };
    if let Some(path) = &a.transcript {
        fs::write(path, out.transcript_jsonl())?;
    }
    eprintln!("candidates={} rounds={}", out.candidates_tested, out.rounds_run);
    match out.result {
        GenResult::ProbablePrime(n) => {
            println!("{n}");
            Ok(ExitCode::SUCCESS)
        }
        GenResult::Fail => {
            println!("FAIL");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_count(a: CountArgs) -> Outcome {
    let n = parse_natural(&a.n).map_err(|e| Failure::Usage(e.to_string()))?;
    let n = u64::try_from(&n).map_err(|_| Failure::Usage(format!("{n} does not fit in 64 bits")))?;
    if n < 3 || n % 2 == 0 {
        return Err(Failure::Usage(format!("n must be odd and >= 3, got {n}")));
    }
    let f = factorize(n)?;
    let need_d = || a.d.ok_or_else(|| Failure::Usage("--d is required for this count".into()));
    match a.what {
        What::Sl => println!("{}", sl_count(&f, need_d()?)),
        What::F => println!("{}", fermat_count(&f)),
        What::L => println!("{}", lucas_count(&f, need_d()?)?),
        What::Mr => println!("{}", mr_count(&f)),
        What::Alpha => {
            let v = alpha_bar(n, &f, need_d()?)?;
            println!("{v}\t{:.6}", v.to_f64());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(a: BoundsArgs) -> Outcome {
    let format = match a.format {
        OutFormat::Tsv => Format::Tsv,
        OutFormat::Json => Format::Json,
    };
    let text = if let Some(which) = a.table {
        if !(1..=6).contains(&which) {
            return Err(Failure::Usage(format!("--table must be 1..6, got {which}")));
        }
        emit_table(which, &TableOptions { l: a.l, c: a.c })?.render(format)
    } else if let Some(kt) = &a.single {
        let b = single_bound(kt[0], kt[1], a.l)?;
        match format {
            Format::Tsv => format!("{}\n", fmt_upper(b.value)),
            Format::Json => serde_json::to_string_pretty(&b).expect("serializable") + "\n",
        }
    } else if let Some(k) = a.exact_q {
        let ex = exact_qk1(k, a.rounds, &default_d_scan(), !a.include_twins)?;
        match format {
            Format::Json => serde_json::to_string_pretty(&ex).expect("serializable") + "\n",
            Format::Tsv => {
                let mut s = String::from("D\tq\texact\tcomposites\tprimes\n");
                for v in &ex.per_d {
                    s.push_str(&format!("{}\t{:.6}\t{}\t{}\t{}\n", v.d, v.value, v.exact, v.composites, v.primes));
                }
                s
            }
        }
    } else {
        unreachable!("clap enforces one target");
    };
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
