//! `C(m, n) mod p` as the product of digit binomials `C(a_i, b_i)`.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::prime::{mul_mod, pow_mod};
use crate::radix::{padded_pair, to_digits};
use crate::{Error, ExactNat, PrimeModulus, Residue, Result};

/// Primes below this bound get factorial / inverse-factorial tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone)]
enum Strategy {
    Table { fact: Vec<u64>, inv_fact: Vec<u64> },
    Direct,
}

/// Per-modulus evaluator. Construction builds the digit-binomial tables
/// when `p < TABLE_LIMIT`; evaluation is read-only afterwards.
#[derive(Debug, Clone)]
pub struct BinomModP {
    modulus: PrimeModulus,
    strategy: Strategy,
}

impl BinomModP {
    pub fn new(p: PrimeModulus) -> Self {
        let pv = p.get();
        let strategy = if pv < TABLE_LIMIT {
            let len = pv as usize;
            let mut fact = Vec::with_capacity(len);
            fact.push(1);
            for k in 1..pv {
                let prev = *fact.last().unwrap();
                fact.push(mul_mod(prev, k, pv));
            }
            let mut inv_fact = alloc::vec![0; len];
            inv_fact[len - 1] = pow_mod(fact[len - 1], pv - 2, pv);
            for k in (1..len).rev() {
                inv_fact[k - 1] = mul_mod(inv_fact[k], k as u64, pv);
            }
            Strategy::Table { fact, inv_fact }
        } else {
            Strategy::Direct
        };
        BinomModP {
            modulus: p,
            strategy,
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn uses_table(&self) -> bool {
        matches!(self.strategy, Strategy::Table { .. })
    }

    /// `C(a, b) mod p` for single digits `a, b < p`.
    pub fn single_digit_binom(&self, a: u64, b: u64) -> Result<Residue> {
        let pv = self.modulus.get();
        for (name, value) in [("a", a), ("b", b)] {
            if value >= pv {
                return Err(Error::ArgumentOutOfRange {
                    name,
                    value,
                    bound: pv,
                });
            }
        }
        Ok(self.modulus.residue(self.digit_binom(a, b)))
    }

    #[inline]
    fn digit_binom(&self, a: u64, b: u64) -> u64 {
        let pv = self.modulus.get();
        if b > a {
            return 0;
        }
        match &self.strategy {
            Strategy::Table { fact, inv_fact } => mul_mod(
                mul_mod(fact[a as usize], inv_fact[b as usize], pv),
                inv_fact[(a - b) as usize],
                pv,
            ),
            Strategy::Direct => {
                // a < p, so every factor is a unit mod p.
                let b = b.min(a - b);
                let mut num = 1;
                let mut den = 1;
                for j in 0..b {
                    num = mul_mod(num, a - j, pv);
                    den = mul_mod(den, j + 1, pv);
                }
                mul_mod(num, pow_mod(den, pv - 2, pv), pv)
            }
        }
    }

    pub fn binom_u64(&self, mut m: u64, mut n: u64) -> Residue {
        let pv = self.modulus.get();
        let mut acc = 1 % pv;
        if n > m {
            return self.modulus.residue(0);
        }
        while n > 0 {
            let c = self.digit_binom(m % pv, n % pv);
            if c == 0 {
                return self.modulus.residue(0);
            }
            acc = mul_mod(acc, c, pv);
            m /= pv;
            n /= pv;
        }
        self.modulus.residue(acc)
    }

    /// `C(m, n) mod p`, zero when `n > m`.
    pub fn binom(&self, m: &ExactNat, n: &ExactNat) -> Residue {
        if let (Ok(m), Ok(n)) = (u64::try_from(m), u64::try_from(n)) {
            return self.binom_u64(m, n);
        }
        if n > m {
            return self.modulus.residue(0);
        }
        let pv = self.modulus.get();
        let dm = to_digits(m, self.modulus);
        let dn = to_digits(n, self.modulus);
        let pair = padded_pair(&dm, &dn).expect("digits share a modulus");
        let mut acc = 1 % pv;
        for (a, b) in pair.pairs() {
            let c = self.digit_binom(a, b);
            if c == 0 {
                return self.modulus.residue(0);
            }
            acc = mul_mod(acc, c, pv);
        }
        self.modulus.residue(acc)
    }
}

pub fn single_digit_binom(a: u64, b: u64, p: PrimeModulus) -> Result<Residue> {
    BinomModP::new(p).single_digit_binom(a, b)
}

pub fn lucas_binom(m: &ExactNat, n: &ExactNat, p: PrimeModulus) -> Residue {
    BinomModP::new(p).binom(m, n)
}

/// Parses a base-10 natural: ASCII digits only, no sign or separators.
pub fn parse_decimal(s: &str) -> Result<ExactNat> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedDecimal(s.to_string()));
    }
    ExactNat::parse_bytes(s.as_bytes(), 10).ok_or_else(|| Error::MalformedDecimal(s.to_string()))
}

pub fn lucas_binom_str(m: &str, n: &str, p: PrimeModulus) -> Result<Residue> {
    let m = parse_decimal(m)?;
    let n = parse_decimal(n)?;
    Ok(lucas_binom(&m, &n, p))
}
