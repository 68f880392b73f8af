//! The factorial factorization `n! = q * a_0! (a_1 p)! ... (a_l p^l)!`, the
//! generalized family `q_{k,i}`, and the congruences relating them.
//!
//! All quantities are computed exactly from an [`ExactOracle`]; residues are
//! taken only at the very end.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::ExactOracle;
use crate::radix::{to_digits_u64, DigitExpansion};
use crate::{Error, ExactNat, PrimeModulus, Residue, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialFactorization {
    n: u64,
    digits: DigitExpansion,
    blocks: Vec<ExactNat>,
    q: ExactNat,
}

impl FactorialFactorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.digits.modulus()
    }

    pub fn digits(&self) -> &DigitExpansion {
        &self.digits
    }

    /// `blocks[i] = (a_i p^i)!`
    pub fn blocks(&self) -> &[ExactNat] {
        &self.blocks
    }

    pub fn q(&self) -> &ExactNat {
        &self.q
    }

    /// `q * prod blocks`, which must reproduce `n!`.
    pub fn recompose(&self) -> ExactNat {
        self.blocks.iter().fold(self.q.clone(), |acc, b| acc * b)
    }
}

fn exact_quotient(num: ExactNat, den: &ExactNat, what: &'static str) -> Result<ExactNat> {
    if den.is_zero() {
        return Err(Error::NonExactDivision(what));
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonExactDivision(what))
    }
}

/// `p^k` as a word, or the cap error if it cannot fit.
fn word_pow(p: u64, k: usize, oracle: &ExactOracle) -> Result<u64> {
    u32::try_from(k)
        .ok()
        .and_then(|k| p.checked_pow(k))
        .ok_or(Error::FactorialCapExceeded {
            requested: BigUint::from(p).pow(k.min(u32::MAX as usize) as u32),
            cap: oracle.cap(),
        })
}

fn block_product(
    digits: &[u64],
    p: u64,
    oracle: &ExactOracle,
    mut digit_at: impl FnMut(usize, u64) -> u64,
) -> Result<(Vec<ExactNat>, ExactNat)> {
    let mut blocks = Vec::with_capacity(digits.len());
    let mut product = BigUint::one();
    let mut scale = 1u64;
    for (j, &d) in digits.iter().enumerate() {
        let d = digit_at(j, d);
        let f = oracle.factorial(d * scale)?;
        product *= &f;
        blocks.push(f);
        if j + 1 < digits.len() {
            scale *= p;
        }
    }
    Ok((blocks, product))
}

pub fn factorize(n: u64, p: PrimeModulus, oracle: &ExactOracle) -> Result<FactorialFactorization> {
    oracle.check_cap(n)?;
    let digits = to_digits_u64(n, p);
    let (blocks, product) = block_product(digits.digits(), p.get(), oracle, |_, d| d)?;
    let q = exact_quotient(oracle.factorial(n)?, &product, "q = n! / prod (a_i p^i)!")?;
    Ok(FactorialFactorization {
        n,
        digits,
        blocks,
        q,
    })
}

pub fn q_mod_p(n: u64, p: PrimeModulus, oracle: &ExactOracle) -> Result<Residue> {
    Ok(p.reduce(factorize(n, p, oracle)?.q()))
}

pub fn gcd_q_p_check(n: u64, p: PrimeModulus, oracle: &ExactOracle) -> Result<bool> {
    let f = factorize(n, p, oracle)?;
    Ok(f.q().gcd(&BigUint::from(p.get())).is_one())
}

/// Index `(k, i)` into the q family of `n`: the k-th block is reduced by
/// `i * p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QIndex {
    digits: DigitExpansion,
    n: u64,
    k: usize,
    i: u64,
}

impl QIndex {
    /// Requires `1 <= k <= top digit index` and `i <= a_k`.
    pub fn new(n: u64, p: PrimeModulus, k: usize, i: u64) -> Result<Self> {
        let digits = to_digits_u64(n, p);
        if k == 0 {
            return Err(Error::InvalidIndex {
                k,
                i,
                reason: "k must be at least 1",
            });
        }
        if digits.top_index().is_none_or(|top| k > top) {
            return Err(Error::InvalidIndex {
                k,
                i,
                reason: "k is above the highest digit of n",
            });
        }
        if i > digits.digit(k) {
            return Err(Error::InvalidIndex {
                k,
                i,
                reason: "i exceeds the k-th digit of n",
            });
        }
        Ok(QIndex { digits, n, k, i })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.digits.modulus()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    /// The k-th digit `a_k`.
    pub fn digit(&self) -> u64 {
        self.digits.digit(self.k)
    }

    fn block_scale(&self) -> u64 {
        // p^k <= n, so this cannot overflow
        self.modulus().get().pow(self.k as u32)
    }

    /// `a_(k) = floor(n / p^k)`
    pub fn upper_part(&self) -> u64 {
        self.n / self.block_scale()
    }

    /// `b_(k) = n mod p^k`
    pub fn lower_part(&self) -> u64 {
        self.n % self.block_scale()
    }

    /// The same index with `i + 1`, if `i < a_k`.
    pub fn next(&self) -> Option<QIndex> {
        (self.i < self.digit()).then(|| QIndex {
            i: self.i + 1,
            ..self.clone()
        })
    }
}

/// `q_{k,i} = (n - i p^k)! / [a_0! (a_1 p)! ... ((a_k - i) p^k)! ... (a_l p^l)!]`
pub fn q_family(idx: &QIndex, oracle: &ExactOracle) -> Result<ExactNat> {
    let scale = idx.block_scale();
    let top = idx.upper_part() * scale + idx.lower_part() - idx.i * scale;
    let (_, product) = block_product(idx.digits.digits(), idx.modulus().get(), oracle, |j, d| {
        if j == idx.k {
            d - idx.i
        } else {
            d
        }
    })?;
    exact_quotient(oracle.factorial(top)?, &product, "q_{k,i}")
}

/// `q_{k,i+1} * C(n - i p^k, p^k) == q_{k,i} * C((a_k - i) p^k, p^k)`,
/// the ratio identity cross-multiplied over the naturals. Requires `i < a_k`.
pub fn ratio_identity_check(idx: &QIndex, oracle: &ExactOracle) -> Result<bool> {
    let next = idx.next().ok_or(Error::InvalidIndex {
        k: idx.k,
        i: idx.i,
        reason: "ratio identity needs i < a_k",
    })?;
    let scale = idx.block_scale();
    let q_i = q_family(idx, oracle)?;
    let q_next = q_family(&next, oracle)?;
    let lhs = oracle.binom_exact(idx.n - idx.i * scale, scale)?;
    let rhs = oracle.binom_exact((idx.digit() - idx.i) * scale, scale)?;
    Ok(q_next * lhs == q_i * rhs)
}

/// `q_{k,i} mod p` for `i = 0..=a_k`. Empty when `a_k = 0`.
pub fn chain_residues(
    n: u64,
    p: PrimeModulus,
    k: usize,
    oracle: &ExactOracle,
) -> Result<Vec<Residue>> {
    if k == 0 {
        return Err(Error::InvalidIndex {
            k,
            i: 0,
            reason: "k must be at least 1",
        });
    }
    oracle.check_cap(n)?;
    let a_k = to_digits_u64(n, p).digit(k);
    if a_k == 0 {
        return Ok(Vec::new());
    }
    (0..=a_k)
        .map(|i| {
            let idx = QIndex::new(n, p, k, i)?;
            Ok(p.reduce(&q_family(&idx, oracle)?))
        })
        .collect()
}

/// Every consecutive pair `q_{k,i}, q_{k,i+1}` is congruent mod `p`, and
/// `q_{k,0}` is exactly `q`. Vacuously true when `a_k = 0`.
pub fn chain_congruence_check(
    n: u64,
    p: PrimeModulus,
    k: usize,
    oracle: &ExactOracle,
) -> Result<bool> {
    let residues = chain_residues(n, p, k, oracle)?;
    if residues.is_empty() {
        return Ok(true);
    }
    let q0 = q_family(&QIndex::new(n, p, k, 0)?, oracle)?;
    let q = factorize(n, p, oracle)?;
    Ok(&q0 == q.q() && residues.windows(2).all(|w| w[0] == w[1]))
}

/// Both sides of `(a p^i)! = a! * p^{a (1 + p + ... + p^{i-1})} (mod p)`,
/// each computed exactly and then reduced.
pub fn lemma6_sides(
    a: u64,
    i: usize,
    p: PrimeModulus,
    oracle: &ExactOracle,
) -> Result<(Residue, Residue)> {
    let pv = p.get();
    if a >= pv {
        return Err(Error::ArgumentOutOfRange {
            name: "a",
            value: a,
            bound: pv,
        });
    }
    let scale = word_pow(pv, i, oracle)?;
    let arg = a
        .checked_mul(scale)
        .ok_or_else(|| Error::FactorialCapExceeded {
            requested: BigUint::from(a) * scale,
            cap: oracle.cap(),
        })?;
    let left = oracle.factorial(arg)?;
    // 1 + p + ... + p^{i-1} = (p^i - 1) / (p - 1)
    let exponent = a * ((scale - 1) / (pv - 1));
    let exponent = u32::try_from(exponent).map_err(|_| Error::FactorialCapExceeded {
        requested: BigUint::from(exponent),
        cap: oracle.cap(),
    })?;
    let right = oracle.factorial(a)? * BigUint::from(pv).pow(exponent);
    Ok((p.reduce(&left), p.reduce(&right)))
}

pub fn lemma6_check(a: u64, i: usize, p: PrimeModulus, oracle: &ExactOracle) -> Result<bool> {
    let (l, r) = lemma6_sides(a, i, p, oracle)?;
    Ok(l == r)
}

/// For a two-digit `n = a_0 + a_1 p`: `q a_0!` equals the falling product
/// `prod_{r < a_0} (a_1 p + a_0 - r)` exactly, and is `= a_0! (mod p)`.
pub fn two_digit_closed_form_check(n: u64, p: PrimeModulus, oracle: &ExactOracle) -> Result<bool> {
    let f = factorize(n, p, oracle)?;
    if f.digits().len() != 2 {
        return Err(Error::ArgumentOutOfRange {
            name: "n",
            value: n,
            bound: p.get().saturating_mul(p.get()),
        });
    }
    let a0 = f.digits().digit(0);
    let a0_fact = oracle.factorial(a0)?;
    let lhs = f.q() * &a0_fact;
    let falling = (0..a0).fold(BigUint::one(), |acc, r| acc * (n - r));
    Ok(lhs == falling && p.reduce(&lhs) == p.reduce(&a0_fact))
}
