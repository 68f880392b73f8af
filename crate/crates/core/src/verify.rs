//! Lemma-by-lemma verification sweeps and the line-oriented report format.
//!
//! A sweep over one lemma is split into *units*, one per value of the outer
//! index `n` (for Lucas' theorem, the upper argument `m`; for polynomial
//! lemmas, the exponent `a p^i`). Each unit enumerates its cases in a fixed
//! order (prime, then `k`, then `i`), so concatenating unit outcomes in unit
//! order yields the canonical report no matter how units were scheduled.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::exact::{pascal_table_mod_p, ExactOracle, PascalTable, DEFAULT_FACTORIAL_CAP};
use crate::lucas::BinomModP;
use crate::polymod::{
    coeff_extract_check, congruent_coeffwise, first_interior_nonzero, freshman_check,
    interior_vanishing_check, poly_pow, DegreeCap, PolyModP,
};
use crate::qfactor::{
    factorize, gcd_q_p_check, lemma6_check, q_family, ratio_identity_check, QIndex,
};
use crate::radix::to_digits_u64;
use crate::{Error, PrimeModulus, Result};

/// Largest Pascal table the coefficient suite will build.
pub const MAX_PASCAL_ROWS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    /// Coefficient-wise congruence of polynomials mod p.
    CoeffCongruence,
    /// `q = n! / prod (a_i p^i)!` is a natural number.
    QIntegrality,
    /// `q = 1 (mod p)`.
    QMod1,
    /// `gcd(q, p) = 1`.
    QCoprime,
    /// `q_{k,i} = q_{k,i+1} = q (mod p)`.
    QChain,
    /// `C(n - i p^k, p^k) = (q_{k,i} / q_{k,i+1}) C((a_k - i) p^k, p^k)`.
    RatioIdentity,
    /// `(a p^i)! = a! p^{a (1 + ... + p^{i-1})} (mod p)`.
    Lemma6,
    /// `(1 + x)^{a p^i} = (1 + x^{p^i})^a (mod p)`.
    Freshman,
    /// `C(a p^i, b p^i) = C(a, b) (mod p)` read off the expansion.
    CoeffExtract,
    /// Digit-product evaluation against the exact binomial.
    LucasVsOracle,
    /// `C(a p^i, k) = 0 (mod p)` for every `0 < k < a p^i` and every digit
    /// `1 <= a < p`, taken literally. True only for `a = 1`, so this sweep
    /// reports FAIL; it is not part of [`LemmaId::ALL`].
    InteriorVanishing,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::CoeffCongruence,
        LemmaId::QIntegrality,
        LemmaId::QMod1,
        LemmaId::QCoprime,
        LemmaId::QChain,
        LemmaId::RatioIdentity,
        LemmaId::Lemma6,
        LemmaId::Freshman,
        LemmaId::CoeffExtract,
        LemmaId::LucasVsOracle,
    ];

    /// Sweeps that are selectable by name but not by `all`.
    pub const EXTRA: [LemmaId; 1] = [LemmaId::InteriorVanishing];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::CoeffCongruence => "coeff_congruence",
            LemmaId::QIntegrality => "q_integrality",
            LemmaId::QMod1 => "q_mod_1",
            LemmaId::QCoprime => "q_coprime",
            LemmaId::QChain => "q_chain",
            LemmaId::RatioIdentity => "ratio_identity",
            LemmaId::Lemma6 => "lemma6",
            LemmaId::Freshman => "freshman",
            LemmaId::CoeffExtract => "coeff_extract",
            LemmaId::LucasVsOracle => "lucas_vs_oracle",
            LemmaId::InteriorVanishing => "interior_vanishing",
        }
    }

    /// Suites that need exact factorials up to `max_n`.
    pub fn needs_factorials(self) -> bool {
        matches!(
            self,
            LemmaId::QIntegrality
                | LemmaId::QMod1
                | LemmaId::QCoprime
                | LemmaId::QChain
                | LemmaId::RatioIdentity
                | LemmaId::Lemma6
                | LemmaId::LucasVsOracle
        )
    }

    /// Suites whose exponents are bounded by the degree cap.
    pub fn needs_polynomials(self) -> bool {
        matches!(
            self,
            LemmaId::CoeffCongruence
                | LemmaId::Freshman
                | LemmaId::CoeffExtract
                | LemmaId::InteriorVanishing
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .chain(LemmaId::EXTRA)
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown lemma id {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes: Vec<PrimeModulus>,
    pub max_n: u64,
    pub degree_cap: DegreeCap,
    pub factorial_cap: u64,
    pub parallelism: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: [2, 3, 5]
                .into_iter()
                .map(|p| PrimeModulus::new(p).expect("small primes"))
                .collect(),
            max_n: 300,
            degree_cap: DegreeCap::DEFAULT,
            factorial_cap: DEFAULT_FACTORIAL_CAP,
            parallelism: 1,
        }
    }
}

/// One failed case with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnitOutcome {
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl UnitOutcome {
    fn check(
        &mut self,
        ok: bool,
        case: impl FnOnce() -> String,
        expected: &str,
        got: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                case: case(),
                expected: expected.to_owned(),
                got: got(),
            });
        }
    }

    fn error(&mut self, case: String, expected: &str, err: &Error) {
        self.cases += 1;
        self.failures.push(Failure {
            case,
            expected: expected.to_owned(),
            got: compact(err),
        });
    }
}

/// Report values never contain whitespace.
fn compact(err: &Error) -> String {
    let text: String = err
        .to_string()
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    format!("error:{text}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub primes: Vec<PrimeModulus>,
    pub max_n: u64,
    pub cases_run: u64,
    pub failures: Vec<Failure>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LEMMA {} primes=", self.lemma)?;
        for (j, p) in self.primes.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        writeln!(
            f,
            " max_n={} cases={} status={}",
            self.max_n,
            self.cases_run,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for fail in &self.failures {
            writeln!(
                f,
                "CASE {} expected={} got={}",
                fail.case, fail.expected, fail.got
            )?;
        }
        Ok(())
    }
}

/// Concatenated reports, one `LEMMA` line each followed by its `CASE` lines.
pub fn render_reports(reports: &[LemmaReport]) -> String {
    reports.iter().map(|r| r.to_string()).collect()
}

/// A `LEMMA` line read back from a rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportSummary {
    pub lemma: LemmaId,
    pub primes: Vec<u64>,
    pub max_n: u64,
    pub cases: u64,
    pub passed: bool,
    pub failure_lines: Vec<String>,
}

pub fn parse_report(text: &str) -> Result<Vec<ReportSummary>> {
    let bad = |line: &str| Error::Config(format!("malformed report line {line:?}"));
    let mut out: Vec<ReportSummary> = Vec::new();
    for line in text.lines().filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix("CASE ") {
            let last = out.last_mut().ok_or_else(|| bad(line))?;
            last.failure_lines.push(rest.to_owned());
            continue;
        }
        let rest = line.strip_prefix("LEMMA ").ok_or_else(|| bad(line))?;
        let fields: Vec<&str> = rest.split(' ').collect();
        let [id, primes, max_n, cases, status] = fields[..] else {
            return Err(bad(line));
        };
        let value = |field: &'static str, s: &str| -> Result<String> {
            s.strip_prefix(field)
                .and_then(|v| v.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| bad(line))
        };
        let number = |s: String| s.parse::<u64>().map_err(|_| bad(line));
        let primes = value("primes", primes)?
            .split(',')
            .map(|p| p.parse::<u64>().map_err(|_| bad(line)))
            .collect::<Result<Vec<_>>>()?;
        let passed = match value("status", status)?.as_str() {
            "PASS" => true,
            "FAIL" => false,
            _ => return Err(bad(line)),
        };
        out.push(ReportSummary {
            lemma: id.parse()?,
            primes,
            max_n: number(value("max_n", max_n)?)?,
            cases: number(value("cases", cases)?)?,
            passed,
            failure_lines: Vec::new(),
        });
    }
    Ok(out)
}

/// Shared read-only state for a sweep: the exact oracle, per-prime Lucas
/// evaluators and Pascal tables.
#[derive(Debug)]
pub struct SuiteRunner {
    cfg: SweepConfig,
    selection: Vec<LemmaId>,
    oracle: ExactOracle,
    evaluators: Vec<BinomModP>,
    pascal: Vec<PascalTable>,
}

impl SuiteRunner {
    pub fn new(cfg: SweepConfig, selection: &[LemmaId]) -> Result<Self> {
        if selection.is_empty() {
            return Err(Error::Config("no lemma selected".into()));
        }
        if cfg.primes.is_empty() {
            return Err(Error::Config("no primes given".into()));
        }
        let mut selection = selection.to_vec();
        selection.sort();
        selection.dedup();
        let mut primes = cfg.primes.clone();
        primes.sort();
        primes.dedup();
        let cfg = SweepConfig { primes, ..cfg };

        for &id in &selection {
            if id.needs_factorials() && cfg.max_n > cfg.factorial_cap {
                return Err(Error::Config(format!(
                    "{id} needs exact factorials up to max_n={} but the factorial cap is {}",
                    cfg.max_n, cfg.factorial_cap
                )));
            }
            if id.needs_polynomials() && cfg.max_n > cfg.degree_cap.0 as u64 {
                return Err(Error::Config(format!(
                    "{id} needs polynomial degrees up to max_n={} but the degree cap is {}",
                    cfg.max_n, cfg.degree_cap.0
                )));
            }
            if id == LemmaId::CoeffCongruence && cfg.max_n >= MAX_PASCAL_ROWS {
                return Err(Error::Config(format!(
                    "{id} builds Pascal tables of max_n + 1 rows, at most {MAX_PASCAL_ROWS}"
                )));
            }
        }

        let wants_table = selection
            .iter()
            .any(|&id| id.needs_factorials() && id != LemmaId::LucasVsOracle);
        let oracle = if wants_table {
            ExactOracle::with_table(cfg.factorial_cap, cfg.max_n)
        } else {
            ExactOracle::new(cfg.factorial_cap)
        };
        let evaluators = if selection.contains(&LemmaId::LucasVsOracle) {
            cfg.primes.iter().map(|&p| BinomModP::new(p)).collect()
        } else {
            Vec::new()
        };
        let pascal = if selection.contains(&LemmaId::CoeffCongruence) {
            cfg.primes
                .iter()
                .map(|&p| pascal_table_mod_p(cfg.max_n as usize + 1, p))
                .collect()
        } else {
            Vec::new()
        };
        Ok(SuiteRunner {
            cfg,
            selection,
            oracle,
            evaluators,
            pascal,
        })
    }

    pub fn config(&self) -> &SweepConfig {
        &self.cfg
    }

    /// Selected lemmas, deduplicated, in canonical order.
    pub fn selection(&self) -> &[LemmaId] {
        &self.selection
    }

    /// The outer index range swept for `lemma`.
    pub fn units(&self, lemma: LemmaId) -> RangeInclusive<u64> {
        match lemma {
            LemmaId::LucasVsOracle | LemmaId::CoeffCongruence => 0..=self.cfg.max_n,
            _ => 1..=self.cfg.max_n,
        }
    }

    pub fn run_unit(&self, lemma: LemmaId, unit: u64) -> UnitOutcome {
        let mut out = UnitOutcome::default();
        match lemma {
            LemmaId::LucasVsOracle => self.lucas_unit(unit, &mut out),
            LemmaId::CoeffCongruence => self.coeff_congruence_unit(unit, &mut out),
            LemmaId::QIntegrality | LemmaId::QMod1 | LemmaId::QCoprime => {
                self.q_unit(lemma, unit, &mut out)
            }
            LemmaId::QChain => self.chain_unit(unit, &mut out),
            LemmaId::RatioIdentity => self.ratio_unit(unit, &mut out),
            LemmaId::Lemma6
            | LemmaId::Freshman
            | LemmaId::CoeffExtract
            | LemmaId::InteriorVanishing => self.block_unit(lemma, unit, &mut out),
        }
        out
    }

    /// Merges unit outcomes given in unit order.
    pub fn finish(
        &self,
        lemma: LemmaId,
        outcomes: impl IntoIterator<Item = UnitOutcome>,
    ) -> Result<LemmaReport> {
        let mut cases_run = 0;
        let mut failures = Vec::new();
        for o in outcomes {
            cases_run += o.cases;
            failures.extend(o.failures);
        }
        if cases_run == 0 {
            return Err(Error::Config(format!(
                "{lemma} has no cases with max_n={}",
                self.cfg.max_n
            )));
        }
        Ok(LemmaReport {
            lemma,
            primes: self.cfg.primes.clone(),
            max_n: self.cfg.max_n,
            cases_run,
            failures,
        })
    }

    pub fn run_lemma(&self, lemma: LemmaId) -> Result<LemmaReport> {
        self.finish(lemma, self.units(lemma).map(|u| self.run_unit(lemma, u)))
    }

    fn lucas_unit(&self, m: u64, out: &mut UnitOutcome) {
        let row = match self.oracle.binom_exact_row(m) {
            Ok(row) => row,
            Err(e) => return out.error(format!("(m={m})"), "row", &e),
        };
        for (n, exact) in row.iter().enumerate() {
            let n = n as u64;
            for ev in &self.evaluators {
                let p = ev.modulus();
                let want = p.reduce(exact);
                let got = ev.binom_u64(m, n);
                out.check(
                    want == got,
                    || format!("(m={m},n={n},p={p})"),
                    &want.to_string(),
                    || got.to_string(),
                );
            }
        }
    }

    fn coeff_congruence_unit(&self, e: u64, out: &mut UnitOutcome) {
        for table in &self.pascal {
            let p = table.modulus();
            let case = || format!("(e={e},p={p})");
            let oracle = PolyModP::new(table.row(e as usize).expect("row built").to_vec(), p);
            let expanded = poly_pow(&PolyModP::one_plus_x_pow(1, p), e, self.cfg.degree_cap)
                .and_then(|f| congruent_coeffwise(&f, &oracle).map(|ok| (ok, f)));
            match expanded {
                Ok((ok, f)) => out.check(ok, case, "pascal_row", || {
                    let k = (0..=e as usize)
                        .find(|&k| f.coeff(k) != oracle.coeff(k))
                        .unwrap_or(0);
                    format!("coeff[{k}]={}", f.coeff(k))
                }),
                Err(err) => out.error(case(), "pascal_row", &err),
            }
        }
    }

    fn q_unit(&self, lemma: LemmaId, n: u64, out: &mut UnitOutcome) {
        for &p in &self.cfg.primes {
            let case = || format!("(n={n},p={p})");
            let f = match factorize(n, p, &self.oracle) {
                Ok(f) => f,
                Err(e) => {
                    out.error(case(), "factorization", &e);
                    continue;
                }
            };
            match lemma {
                LemmaId::QIntegrality => {
                    let fact = self.oracle.factorial(n).expect("within cap");
                    out.check(f.recompose() == fact, case, "q*blocks=n!", || {
                        format!("q={}", f.q())
                    })
                }
                LemmaId::QMod1 => {
                    let r = p.reduce(f.q());
                    out.check(r.value() == 1, case, "1", || r.to_string())
                }
                LemmaId::QCoprime => {
                    let g = f.q().gcd(&BigUint::from(p.get()));
                    let ok = gcd_q_p_check(n, p, &self.oracle) == Ok(true);
                    out.check(ok && g == BigUint::from(1u32), case, "gcd=1", || {
                        format!("gcd={g}")
                    })
                }
                _ => unreachable!(),
            }
        }
    }

    /// `(p, k, a_k)` with `k >= 1` and a nonzero digit, in sweep order.
    fn nonzero_blocks(&self, n: u64) -> Vec<(PrimeModulus, usize, u64)> {
        let mut out = Vec::new();
        for &p in &self.cfg.primes {
            let d = to_digits_u64(n, p);
            for (k, &a_k) in d.digits().iter().enumerate().skip(1) {
                if a_k > 0 {
                    out.push((p, k, a_k));
                }
            }
        }
        out
    }

    fn chain_unit(&self, n: u64, out: &mut UnitOutcome) {
        for (p, k, a_k) in self.nonzero_blocks(n) {
            let q = match factorize(n, p, &self.oracle) {
                Ok(f) => f.q().clone(),
                Err(e) => return out.error(format!("(n={n},p={p})"), "factorization", &e),
            };
            let q_res = p.reduce(&q);
            let family: Result<Vec<_>> = (0..=a_k)
                .map(|i| q_family(&QIndex::new(n, p, k, i)?, &self.oracle))
                .collect();
            let family = match family {
                Ok(f) => f,
                Err(e) => return out.error(format!("(n={n},p={p},k={k})"), "q_family", &e),
            };
            for i in 0..a_k as usize {
                let (cur, next) = (p.reduce(&family[i]), p.reduce(&family[i + 1]));
                let exact_start = i > 0 || family[0] == q;
                out.check(
                    exact_start && cur == next && cur == q_res,
                    || format!("(n={n},p={p},k={k},i={i})"),
                    &format!("q_mod_p={q_res}"),
                    || format!("q_k_i={cur},q_k_i+1={next},q_k_0_is_q={exact_start}"),
                );
            }
        }
    }

    fn ratio_unit(&self, n: u64, out: &mut UnitOutcome) {
        for (p, k, a_k) in self.nonzero_blocks(n) {
            for i in 0..a_k {
                let case = || format!("(n={n},p={p},k={k},i={i})");
                match QIndex::new(n, p, k, i)
                    .and_then(|idx| ratio_identity_check(&idx, &self.oracle))
                {
                    Ok(ok) => out.check(ok, case, "equal", || "unequal".into()),
                    Err(e) => out.error(case(), "equal", &e),
                }
            }
        }
    }

    /// Cases `(p, i, a)` with `1 <= a < p` and `a p^i = n`.
    fn blocks_of(&self, n: u64) -> Vec<(PrimeModulus, usize, u64)> {
        let mut out = Vec::new();
        for &p in &self.cfg.primes {
            let pv = p.get();
            let mut scale = 1u64;
            let mut i = 0;
            while scale <= n {
                if n.is_multiple_of(scale) && n / scale < pv {
                    out.push((p, i, n / scale));
                }
                match scale.checked_mul(pv) {
                    Some(s) => scale = s,
                    None => break,
                }
                i += 1;
            }
        }
        out
    }

    fn block_unit(&self, lemma: LemmaId, n: u64, out: &mut UnitOutcome) {
        let cap = self.cfg.degree_cap;
        for (p, i, a) in self.blocks_of(n) {
            let case = || format!("(n={n},p={p},i={i},a={a})");
            match lemma {
                LemmaId::Lemma6 => match lemma6_check(a, i, p, &self.oracle) {
                    Ok(ok) => out.check(ok, case, "congruent", || "incongruent".into()),
                    Err(e) => out.error(case(), "congruent", &e),
                },
                LemmaId::Freshman => {
                    let checked = freshman_check(i, a, p, cap).and_then(|ok| {
                        // a = 1 is the freshman's dream proper: all interior
                        // coefficients of (1 + x)^{p^i} vanish.
                        Ok(ok && (a != 1 || interior_vanishing_check(1, i, p, cap)?))
                    });
                    match checked {
                        Ok(ok) => out.check(ok, case, "congruent", || "incongruent".into()),
                        Err(e) => out.error(case(), "congruent", &e),
                    }
                }
                LemmaId::CoeffExtract => {
                    for b in 0..=a {
                        let case = || format!("(n={n},p={p},i={i},a={a},b={b})");
                        match coeff_extract_check(a, b, i, p, cap) {
                            Ok(ok) => out.check(ok, case, "C(a,b)", || "mismatch".into()),
                            Err(e) => out.error(case(), "C(a,b)", &e),
                        }
                    }
                }
                LemmaId::InteriorVanishing => {
                    if i == 0 {
                        continue;
                    }
                    match first_interior_nonzero(a, i, p, cap) {
                        Ok(first) => out.check(first.is_none(), case, "interior_zero", || {
                            let (k, c) = first.expect("checked");
                            format!("coeff[{k}]={c}")
                        }),
                        Err(e) => out.error(case(), "interior_zero", &e),
                    }
                }
                _ => unreachable!(),
            }
        }
    }
}

/// Runs every selected lemma sequentially; reports come back in canonical
/// lemma order.
pub fn run_suite(cfg: SweepConfig, selection: &[LemmaId]) -> Result<Vec<LemmaReport>> {
    let runner = SuiteRunner::new(cfg, selection)?;
    runner
        .selection()
        .iter()
        .map(|&id| runner.run_lemma(id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn primes(ps: &[u64]) -> Vec<PrimeModulus> {
        ps.iter().map(|&p| PrimeModulus::new(p).unwrap()).collect()
    }

    fn cfg(ps: &[u64], max_n: u64) -> SweepConfig {
        SweepConfig {
            primes: primes(ps),
            max_n,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn interior_vanishing_fails_beyond_a_equal_one() {
        let r = &run_suite(cfg(&[2, 3, 5], 60), &[LemmaId::InteriorVanishing]).unwrap()[0];
        assert!(!r.passed());
        // p=2 only has a=1; p=3: (i,a) in (1,1),(1,2),(2,1),(2,2),(3,1),(3,2)... up to 60
        for f in &r.failures {
            assert!(!f.case.contains("a=1)"), "{}", f.case);
        }
        assert!(r
            .failures
            .iter()
            .any(|f| f.case == "(n=6,p=3,i=1,a=2)" && f.got == "coeff[3]=2"));
        assert!(!LemmaId::ALL.contains(&LemmaId::InteriorVanishing));
    }

    #[test]
    fn lemma_ids_round_trip() {
        for id in LemmaId::ALL.into_iter().chain(LemmaId::EXTRA) {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
        }
        assert!("bogus".parse::<LemmaId>().is_err());
    }

    #[test]
    fn q_mod_1_example() {
        let reports = run_suite(cfg(&[2, 3], 100), &[LemmaId::QMod1]).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].cases_run, 200);
        assert!(reports[0].passed());
        assert_eq!(
            reports[0].to_string(),
            "LEMMA q_mod_1 primes=2,3 max_n=100 cases=200 status=PASS\n"
        );
    }

    #[test]
    fn empty_selection_is_rejected() {
        assert!(matches!(
            run_suite(cfg(&[2], 10), &[]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn lucas_base_cases() {
        let reports = run_suite(cfg(&[5], 1), &[LemmaId::LucasVsOracle]).unwrap();
        assert_eq!(reports[0].cases_run, 3);
        assert!(reports[0].passed());
    }

    #[test]
    fn config_checks() {
        let mut c = cfg(&[2], 50);
        c.factorial_cap = 40;
        assert!(SuiteRunner::new(c.clone(), &[LemmaId::QMod1]).is_err());
        assert!(SuiteRunner::new(c.clone(), &[LemmaId::Freshman]).is_ok());
        c.degree_cap = DegreeCap(10);
        assert!(SuiteRunner::new(c, &[LemmaId::Freshman]).is_err());
        assert!(SuiteRunner::new(cfg(&[], 5), &[LemmaId::QMod1]).is_err());
        // n = 1 has no digit above a_0 for p = 2
        assert!(run_suite(cfg(&[2], 1), &[LemmaId::QChain]).is_err());
    }

    #[test]
    fn full_default_profile_passes() {
        let reports = run_suite(SweepConfig::default(), &LemmaId::ALL).unwrap();
        assert_eq!(reports.len(), 10);
        for r in &reports {
            assert!(r.passed(), "{r}");
            assert!(r.cases_run >= 1);
        }
        let text = render_reports(&reports);
        let parsed = parse_report(&text).unwrap();
        assert_eq!(parsed.len(), 10);
        for (r, s) in reports.iter().zip(&parsed) {
            assert_eq!(
                (s.lemma, s.cases, s.max_n, s.passed),
                (r.lemma, r.cases_run, 300, true)
            );
            assert_eq!(s.primes, vec![2, 3, 5]);
        }
    }

    #[test]
    fn selection_is_canonicalized() {
        let a = run_suite(
            cfg(&[3, 2, 3], 40),
            &[LemmaId::LucasVsOracle, LemmaId::QMod1, LemmaId::QMod1],
        )
        .unwrap();
        let b = run_suite(cfg(&[2, 3], 40), &[LemmaId::QMod1, LemmaId::LucasVsOracle]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].lemma, LemmaId::QMod1);
    }

    #[test]
    fn case_counts_follow_enumeration() {
        let runner = SuiteRunner::new(cfg(&[2, 3], 12), &LemmaId::ALL).unwrap();
        // lucas: sum_{m<=12} (m + 1) pairs, two primes
        assert_eq!(
            runner.run_lemma(LemmaId::LucasVsOracle).unwrap().cases_run,
            91 * 2
        );
        assert_eq!(
            runner
                .run_lemma(LemmaId::CoeffCongruence)
                .unwrap()
                .cases_run,
            13 * 2
        );
        // p=2: n in {1,2,4,8}; p=3: n in {1,2,3,6,9}
        assert_eq!(runner.run_lemma(LemmaId::Lemma6).unwrap().cases_run, 9);
        // ratio: sum over n, p, k >= 1 of a_k
        let mut want = 0;
        for n in 1..=12u64 {
            for p in [2u64, 3] {
                let d = to_digits_u64(n, PrimeModulus::new(p).unwrap());
                want += d.digits().iter().skip(1).sum::<u64>();
            }
        }
        assert_eq!(
            runner.run_lemma(LemmaId::RatioIdentity).unwrap().cases_run,
            want
        );
        assert_eq!(runner.run_lemma(LemmaId::QChain).unwrap().cases_run, want);
    }

    #[test]
    fn failures_render_case_lines() {
        let report = LemmaReport {
            lemma: LemmaId::QMod1,
            primes: primes(&[2]),
            max_n: 3,
            cases_run: 3,
            failures: vec![Failure {
                case: "(n=3,p=2)".into(),
                expected: "1".into(),
                got: "0".into(),
            }],
        };
        let text = report.to_string();
        assert_eq!(
            text,
            "LEMMA q_mod_1 primes=2 max_n=3 cases=3 status=FAIL\nCASE (n=3,p=2) expected=1 got=0\n"
        );
        let parsed = parse_report(&text).unwrap();
        assert!(!parsed[0].passed);
        assert_eq!(parsed[0].failure_lines, vec!["(n=3,p=2) expected=1 got=0"]);
        assert!(parse_report("CASE x").is_err());
        assert!(parse_report("LEMMA q_mod_1 primes=2 max_n=3 cases=3").is_err());
    }

    #[test]
    fn errors_become_failures_without_spaces() {
        let mut out = UnitOutcome::default();
        out.error("(n=1)".into(), "x", &Error::NonExactDivision("q"));
        assert_eq!(out.cases, 1);
        assert!(!out.failures[0].got.contains(' '));
    }
}
