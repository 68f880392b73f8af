//! Exact reference computations.
//!
//! Nothing here shares code with the residue fast paths: factorials and
//! binomials are computed over the naturals, and the Pascal triangle mod `p`
//! uses only additions.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, ExactNat, PrimeModulus, Residue, Result};

pub const DEFAULT_FACTORIAL_CAP: u64 = 100_000;

/// Exact factorial and binomial oracle bounded by a runtime cap.
///
/// An optional table memoizes `0!..=upto!` for sweeps that need many
/// factorials of nearby arguments.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    cap: u64,
    table: Vec<BigUint>,
}

impl Default for ExactOracle {
    fn default() -> Self {
        ExactOracle::new(DEFAULT_FACTORIAL_CAP)
    }
}

impl ExactOracle {
    pub fn new(cap: u64) -> Self {
        ExactOracle {
            cap,
            table: vec![BigUint::one()],
        }
    }

    /// Like [`ExactOracle::new`], with `k!` precomputed for `k <= min(upto, cap)`.
    pub fn with_table(cap: u64, upto: u64) -> Self {
        let top = upto.min(cap) as usize;
        let mut table = Vec::with_capacity(top + 1);
        let mut acc = BigUint::one();
        table.push(acc.clone());
        for k in 1..=top {
            acc *= k as u64;
            table.push(acc.clone());
        }
        ExactOracle { cap, table }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn check_cap(&self, n: u64) -> Result<()> {
        if n > self.cap {
            Err(Error::FactorialCapExceeded {
                requested: ExactNat::from(n),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Converts an operand to a word, failing with the cap error when it
    /// cannot possibly be within the cap.
    pub fn small_operand(&self, n: &ExactNat) -> Result<u64> {
        match u64::try_from(n) {
            Ok(v) if v <= self.cap => Ok(v),
            _ => Err(Error::FactorialCapExceeded {
                requested: n.clone(),
                cap: self.cap,
            }),
        }
    }

    pub fn factorial(&self, n: u64) -> Result<ExactNat> {
        self.check_cap(n)?;
        if let Some(f) = self.table.get(n as usize) {
            return Ok(f.clone());
        }
        let start = self.table.len() as u64 - 1;
        let mut acc = self.table[start as usize].clone();
        for k in start + 1..=n {
            acc *= k;
        }
        Ok(acc)
    }

    /// `C(m, n)` by the multiplicative formula `prod (m - j) / (j + 1)`;
    /// every partial quotient is itself a binomial, so each division is exact.
    pub fn binom_exact(&self, m: u64, n: u64) -> Result<ExactNat> {
        self.check_cap(m)?;
        if n > m {
            return Ok(BigUint::default());
        }
        let n = n.min(m - n);
        let mut acc = BigUint::one();
        for j in 0..n {
            acc *= m - j;
            acc /= j + 1;
        }
        Ok(acc)
    }

    /// The full row `C(m, 0..=m)`, stepping the multiplicative formula.
    pub fn binom_exact_row(&self, m: u64) -> Result<Vec<ExactNat>> {
        self.check_cap(m)?;
        let mut row = Vec::with_capacity(m as usize + 1);
        let mut acc = BigUint::one();
        row.push(acc.clone());
        for j in 0..m {
            acc *= m - j;
            acc /= j + 1;
            row.push(acc.clone());
        }
        Ok(row)
    }
}

/// Rows of Pascal's triangle reduced mod `p`, built only from additions.
#[derive(Debug, Clone)]
pub struct PascalRows {
    row: Vec<u64>,
    modulus: PrimeModulus,
}

pub fn pascal_rows(p: PrimeModulus) -> PascalRows {
    PascalRows {
        row: Vec::new(),
        modulus: p,
    }
}

impl Iterator for PascalRows {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let p = self.modulus.get();
        if self.row.is_empty() {
            self.row.push(1 % p);
        } else {
            self.row.push(0);
            for c in (1..self.row.len()).rev() {
                let (s, carry) = self.row[c].overflowing_add(self.row[c - 1]);
                self.row[c] = if carry || s >= p {
                    s.wrapping_sub(p)
                } else {
                    s
                };
            }
        }
        Some(self.row.clone())
    }
}

/// Rows `0..rows` of Pascal's triangle mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalTable {
    rows: Vec<Vec<u64>>,
    modulus: PrimeModulus,
}

pub fn pascal_table_mod_p(rows: usize, p: PrimeModulus) -> PascalTable {
    PascalTable {
        rows: pascal_rows(p).take(rows).collect(),
        modulus: p,
    }
}

impl PascalTable {
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, r: usize) -> Option<&[u64]> {
        self.rows.get(r).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// `C(r, c) mod p`; zero for `c > r`, `None` if row `r` was not built.
    pub fn get(&self, r: usize, c: usize) -> Option<Residue> {
        let row = self.rows.get(r)?;
        Some(self.modulus.residue(row.get(c).copied().unwrap_or(0)))
    }
}
