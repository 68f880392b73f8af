//! The `lucaskit` command line.
//!
//! Exit codes: 0 success (or every lemma PASS), 1 some lemma FAIL, 2 usage
//! or parse error, 3 non-prime modulus.

use std::ffi::OsString;
use std::io::{self, BufWriter, Write};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lucaskit_core::exact::{pascal_rows, ExactOracle};
use lucaskit_core::lucas::{lucas_binom_str, parse_decimal};
use lucaskit_core::polymod::DegreeCap;
use lucaskit_core::radix::to_digits;
use lucaskit_core::verify::{render_reports, LemmaId, SweepConfig};
use lucaskit_core::{Error, PrimeModulus};

use crate::{cache, config, parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_PRIME: i32 = 3;

const MAX_TABLE_ROWS: usize = 10_000;
const MAX_BENCH_DIGITS: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotPrime(Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NotPrime(_) => EXIT_NOT_PRIME,
            CliError::Io(_) => EXIT_FAIL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime { .. } => CliError::NotPrime(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lucaskit",
    version,
    about = "Binomial coefficients modulo a prime, and verification of the proof behind them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C(m, n) mod p.
    Compute { m: String, n: String, p: String },
    /// Print the base-p digits of n, least significant first.
    Digits { n: String, p: String },
    /// Run lemma verification sweeps (`all` selects every lemma).
    Verify {
        #[arg(required = true)]
        lemmas: Vec<String>,
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[arg(long = "max-n", default_value_t = 300)]
        max_n: u64,
        #[arg(long = "degree-cap", default_value_t = DegreeCap::DEFAULT.0)]
        degree_cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print rows of Pascal's triangle mod p.
    Table {
        p: String,
        rows: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Time the digit-product evaluation on random operands.
    Bench {
        #[arg(long, default_value_t = 1000)]
        digits: usize,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value = "7")]
        prime: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses a word-sized prime given in decimal.
pub fn parse_prime(s: &str) -> Result<PrimeModulus, CliError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Usage(format!(
            "not a decimal natural number: {s:?}"
        )));
    }
    let p: u64 = s
        .parse()
        .map_err(|_| CliError::Usage(format!("modulus {s} does not fit in 64 bits")))?;
    Ok(PrimeModulus::new(p)?)
}

/// Parses arguments and runs one subcommand, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Compute { m, n, p } => {
            let p = parse_prime(&p)?;
            let m = parse_decimal(&m)?;
            let n = parse_decimal(&n)?;
            let r = cache::with_evaluator(p, |ev| ev.binom(&m, &n));
            writeln!(out, "{r}")?;
            Ok(EXIT_OK)
        }
        Command::Digits { n, p } => {
            let p = parse_prime(&p)?;
            let n = parse_decimal(&n)?;
            let digits = to_digits(&n, p);
            let line: Vec<String> = digits.digits().iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            lemmas,
            primes,
            max_n,
            degree_cap,
            jobs,
        } => verify(&lemmas, &primes, max_n, degree_cap, jobs, out),
        Command::Table { p, rows, format } => {
            let p = parse_prime(&p)?;
            if rows > MAX_TABLE_ROWS {
                return Err(CliError::Usage(format!(
                    "at most {MAX_TABLE_ROWS} rows, got {rows}"
                )));
            }
            table(p, rows, format, out)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            digits,
            reps,
            prime,
            seed,
        } => bench(digits, reps, &prime, seed, out),
    }
}

fn verify(
    lemmas: &[String],
    primes: &str,
    max_n: u64,
    degree_cap: usize,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut selection = Vec::new();
    for id in lemmas {
        if id == "all" {
            selection.extend(LemmaId::ALL);
        } else {
            selection.push(id.parse::<LemmaId>()?);
        }
    }
    let primes = primes
        .split(',')
        .map(|p| parse_prime(p.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let cfg = SweepConfig {
        primes,
        max_n,
        degree_cap: DegreeCap(degree_cap),
        factorial_cap: config::factorial_cap().map_err(CliError::Usage)?,
        parallelism: jobs,
    };
    let reports = parallel::run_suite(cfg, &selection)?;
    out.write_all(render_reports(&reports).as_bytes())?;
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn table(p: PrimeModulus, rows: usize, format: TableFormat, out: &mut dyn Write) -> io::Result<()> {
    let mut w = BufWriter::new(out);
    let width = (p.get() - 1).to_string().len();
    for row in pascal_rows(p).take(rows) {
        let cells: Vec<String> = match format {
            TableFormat::Csv => row.iter().map(u64::to_string).collect(),
            TableFormat::Text => row.iter().map(|v| format!("{v:<width$}")).collect(),
        };
        let sep = if format == TableFormat::Csv { "," } else { " " };
        writeln!(w, "{}", cells.join(sep).trim_end())?;
    }
    w.flush()
}

fn random_decimal(rng: &mut StdRng, digits: usize) -> String {
    let mut s = String::with_capacity(digits);
    s.push(char::from(b'0' + rng.gen_range(1..=9u8)));
    for _ in 1..digits {
        s.push(char::from(b'0' + rng.gen_range(0..=9u8)));
    }
    s
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort_unstable();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn bench(
    digits: usize,
    reps: usize,
    prime: &str,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if digits == 0 || digits > MAX_BENCH_DIGITS {
        return Err(CliError::Usage(format!(
            "--digits must be in 1..={MAX_BENCH_DIGITS}, got {digits}"
        )));
    }
    if reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let p = parse_prime(prime)?;
    let cap = config::factorial_cap().map_err(CliError::Usage)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let operands: Vec<(String, String)> = (0..reps)
        .map(|_| {
            let a = random_decimal(&mut rng, digits);
            let b = random_decimal(&mut rng, digits);
            // equal lengths, so string order is numeric order
            if a >= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();

    let mut fast = Vec::with_capacity(reps);
    let mut results = Vec::with_capacity(reps);
    for (m, n) in &operands {
        let start = Instant::now();
        let r = lucas_binom_str(m, n, p)?;
        fast.push(start.elapsed());
        results.push(r);
    }
    writeln!(
        out,
        "lucas digits={digits} reps={reps} p={p} median_ms={:.4}",
        millis(median(fast))
    )?;

    let small: Option<Vec<(u64, u64)>> = operands
        .iter()
        .map(|(m, n)| Some((m.parse::<u64>().ok()?, n.parse::<u64>().ok()?)))
        .collect::<Option<Vec<_>>>()
        .filter(|ops| ops.iter().all(|&(m, _)| m <= cap));
    if let Some(small) = small {
        let oracle = ExactOracle::new(cap);
        let mut slow = Vec::with_capacity(reps);
        let mut agree = true;
        for (&(m, n), fast_result) in small.iter().zip(&results) {
            let start = Instant::now();
            let exact = oracle.binom_exact(m, n)?;
            let r = p.reduce(&exact);
            slow.push(start.elapsed());
            agree &= r == *fast_result;
        }
        writeln!(
            out,
            "oracle digits={digits} reps={reps} p={p} median_ms={:.4} agree={agree}",
            millis(median(slow))
        )?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lucaskit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn compute_examples() {
        assert_eq!(run_capture(&["compute", "10", "3", "7"]).1, "1\n");
        assert_eq!(run_capture(&["compute", "6", "3", "5"]).1, "0\n");
        assert_eq!(run_capture(&["compute", "5", "9", "3"]).1, "0\n");
    }

    #[test]
    fn compute_errors() {
        assert_eq!(run_capture(&["compute", "1x", "3", "7"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["compute", "10", "3", "99999999999999999999"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = run_capture(&["compute", "10", "3", "9"]);
        assert_eq!(code, EXIT_NOT_PRIME);
        assert!(err.contains("trial division found factor 3"), "{err}");
        assert_eq!(run_capture(&["compute", "10", "3", "1"]).0, EXIT_NOT_PRIME);
        assert_eq!(run_capture(&["compute", "10", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn digits_examples() {
        assert_eq!(run_capture(&["digits", "10", "7"]).1, "3 1\n");
        assert_eq!(run_capture(&["digits", "0", "5"]).1, "\n");
        assert_eq!(run_capture(&["digits", "7", "2"]).1, "1 1 1\n");
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            run_capture(&["table", "2", "3", "--format", "csv"]).1,
            "1\n1,1\n1,0,1\n"
        );
        assert_eq!(run_capture(&["table", "5", "1"]).1, "1\n");
        let csv = run_capture(&["table", "3", "4", "--format", "csv"]).1;
        assert_eq!(csv.lines().last(), Some("1,0,0,1"));
        assert_eq!(
            run_capture(&["table", "11", "12"]).1.lines().nth(11),
            Some("1  0  0  0  0  0  0  0  0  0  0  1")
        );
        assert_eq!(
            run_capture(&["table", "5", "3", "--format", "html"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["table", "5", "10001"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_examples() {
        let (code, out, _) =
            run_capture(&["verify", "q_mod_1", "--primes", "2,3", "--max-n", "100"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            out,
            "LEMMA q_mod_1 primes=2,3 max_n=100 cases=200 status=PASS\n"
        );
        assert_eq!(run_capture(&["verify", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["verify", "all", "--primes", "2,4"]).0,
            EXIT_NOT_PRIME
        );
        assert_eq!(run_capture(&["verify", "all", "--jobs", "0"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["verify", "all", "--degree-cap", "10"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn bench_examples() {
        let (code, out, _) = run_capture(&["bench", "--digits", "3", "--reps", "5"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("lucas digits=3 reps=5 p=7 median_ms="));
        let oracle_line = out.lines().nth(1).unwrap();
        assert!(oracle_line.starts_with("oracle digits=3") && oracle_line.ends_with("agree=true"));
        assert_eq!(
            run_capture(&["bench", "--digits", "0", "--reps", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["bench", "--digits", "100001"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bench", "--reps", "0"]).0, EXIT_USAGE);
        let (_, out, _) = run_capture(&["bench", "--digits", "40", "--reps", "3"]);
        assert_eq!(out.lines().count(), 1);
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }
}
