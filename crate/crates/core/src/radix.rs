//! Little-endian base-`p` digit expansions.
//!
//! Index `i` holds the coefficient of `p^i`. The canonical form has a nonzero
//! last digit, so zero is the empty expansion. Zero padding only appears in
//! [`PaddedPair`].

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::{Error, ExactNat, PrimeModulus, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitExpansion {
    digits: Vec<u64>,
    modulus: PrimeModulus,
}

/// Largest power `p^t <= u64::MAX`, returned as `(p^t, t)`.
fn word_chunk(p: u64) -> (u64, usize) {
    let mut pow = p;
    let mut t = 1;
    while let Some(next) = pow.checked_mul(p) {
        pow = next;
        t += 1;
    }
    (pow, t)
}

#[allow(clippy::len_without_is_empty)]
impl DigitExpansion {
    /// Validates every digit and drops trailing zeros.
    pub fn new(mut digits: Vec<u64>, modulus: PrimeModulus) -> Result<Self> {
        validate(&digits, modulus)?;
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitExpansion { digits, modulus })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Number of stored digits; 0 for the value zero.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// The coefficient of `p^i`, zero past the top digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Index of the highest nonzero digit, `None` for zero.
    pub fn top_index(&self) -> Option<usize> {
        self.digits.len().checked_sub(1)
    }

    /// Recomposes `sum digits[i] * p^i`.
    pub fn value(&self) -> ExactNat {
        recompose(&self.digits, self.modulus.get())
    }

    pub fn into_digits(self) -> Vec<u64> {
        self.digits
    }
}

fn validate(digits: &[u64], modulus: PrimeModulus) -> Result<()> {
    let p = modulus.get();
    match digits.iter().position(|&d| d >= p) {
        Some(index) => Err(Error::DigitOutOfRange {
            index,
            digit: digits[index],
            p,
        }),
        None => Ok(()),
    }
}

fn recompose(digits: &[u64], p: u64) -> ExactNat {
    let (chunk_pow, t) = word_chunk(p);
    let mut acc = BigUint::default();
    let mut rest = digits;
    // Highest group may be short; every other group has exactly `t` digits.
    let head = rest.len() % t;
    let mut group_len = if head == 0 { t } else { head };
    while !rest.is_empty() {
        let (lower, group) = rest.split_at(rest.len() - group_len);
        let mut chunk = 0u64;
        for &d in group.iter().rev() {
            chunk = chunk * p + d;
        }
        let scale = if group_len == t {
            chunk_pow
        } else {
            p.pow(group_len as u32)
        };
        acc *= scale;
        acc += chunk;
        rest = lower;
        group_len = t;
    }
    acc
}

/// Canonical base-`p` expansion of `n`.
pub fn to_digits(n: &ExactNat, p: PrimeModulus) -> DigitExpansion {
    let pv = p.get();
    let (chunk_pow, t) = word_chunk(pv);
    let mut limbs: Vec<u64> = n.to_u64_digits();
    let mut digits =
        Vec::with_capacity(limbs.len() * 64 / (64 - pv.leading_zeros() as usize).max(1));
    while !limbs.is_empty() {
        let mut rem: u128 = 0;
        for limb in limbs.iter_mut().rev() {
            let cur = (rem << 64) | *limb as u128;
            *limb = (cur / chunk_pow as u128) as u64;
            rem = cur % chunk_pow as u128;
        }
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        let mut r = rem as u64;
        for _ in 0..t {
            digits.push(r % pv);
            r /= pv;
        }
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
    DigitExpansion { digits, modulus: p }
}

pub fn to_digits_u64(n: u64, p: PrimeModulus) -> DigitExpansion {
    let pv = p.get();
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % pv);
        rest /= pv;
    }
    DigitExpansion { digits, modulus: p }
}

/// Recomposes a raw digit slice, rejecting any digit `>= p`.
///
/// Trailing zeros are accepted; they do not change the value.
pub fn from_digits(digits: &[u64], p: PrimeModulus) -> Result<ExactNat> {
    validate(digits, p)?;
    Ok(recompose(digits, p.get()))
}

/// Two expansions zero-extended to a common length `max(k, l) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedPair {
    upper: Vec<u64>,
    lower: Vec<u64>,
    modulus: PrimeModulus,
}

impl PaddedPair {
    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    pub fn lower(&self) -> &[u64] {
        &self.lower
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    /// Digit pairs `(a_i, b_i)` from `i = 0` upwards.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.upper.iter().copied().zip(self.lower.iter().copied())
    }
}

pub fn padded_pair(m: &DigitExpansion, n: &DigitExpansion) -> Result<PaddedPair> {
    m.modulus.check_same(n.modulus)?;
    let len = m.len().max(n.len());
    let pad = |d: &DigitExpansion| {
        let mut v = Vec::with_capacity(len);
        v.extend_from_slice(&d.digits);
        v.resize(len, 0);
        v
    };
    Ok(PaddedPair {
        upper: pad(m),
        lower: pad(n),
        modulus: m.modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    /// Repeated division with remainder, one digit at a time.
    fn naive_digits(mut n: u64, p: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 0 {
            out.push(n % p);
            n /= p;
        }
        out
    }

    #[test]
    fn examples() {
        assert!(to_digits(&BigUint::from(0u32), p(7)).digits().is_empty());
        assert_eq!(naive_digits(10, 7), vec![3, 1]);
        assert_eq!(to_digits(&BigUint::from(10u32), p(7)).digits(), &[3, 1]);
        assert_eq!(naive_digits(7, 2), vec![1, 1, 1]);
        assert_eq!(to_digits(&BigUint::from(7u32), p(2)).digits(), &[1, 1, 1]);

        assert_eq!(from_digits(&[], p(7)).unwrap(), BigUint::from(0u32));
        assert_eq!(from_digits(&[3, 1], p(7)).unwrap(), BigUint::from(10u32));
        assert_eq!(from_digits(&[1, 1, 1], p(2)).unwrap(), BigUint::from(7u32));
    }

    #[test]
    fn rejects_corrupt_digits() {
        assert_eq!(
            from_digits(&[3, 7], p(7)),
            Err(Error::DigitOutOfRange {
                index: 1,
                digit: 7,
                p: 7
            })
        );
        assert!(DigitExpansion::new(vec![2], p(2)).is_err());
        assert_eq!(
            DigitExpansion::new(vec![1, 0, 0], p(2)).unwrap().digits(),
            &[1]
        );
    }

    #[test]
    fn padding() {
        let a = to_digits_u64(3, p(7));
        let b = to_digits_u64(10, p(7));
        let pair = padded_pair(&a, &b).unwrap();
        assert_eq!(pair.upper(), &[3, 0]);
        assert_eq!(pair.lower(), &[3, 1]);

        let z = to_digits_u64(0, p(7));
        let pair = padded_pair(&z, &z).unwrap();
        assert!(pair.is_empty());

        let a = to_digits_u64(7, p(2));
        let b = to_digits_u64(1, p(2));
        let pair = padded_pair(&a, &b).unwrap();
        assert_eq!(pair.upper(), &[1, 1, 1]);
        assert_eq!(pair.lower(), &[1, 0, 0]);

        let c = to_digits_u64(1, p(3));
        assert_eq!(
            padded_pair(&a, &c),
            Err(Error::ModulusMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn round_trip_small_range() {
        for &pv in &[2u64, 3, 5, 7, 11, 13] {
            for n in 0..=10_000u64 {
                let big = BigUint::from(n);
                let d = to_digits(&big, p(pv));
                assert_eq!(d.digits(), naive_digits(n, pv).as_slice());
                assert_eq!(d.value(), big);
                assert_eq!(d, to_digits_u64(n, p(pv)));
                if n >= 1 {
                    assert_eq!(d.len() as u32, n.ilog(pv) + 1);
                }
            }
        }
    }

    #[test]
    fn large_prime_single_digit() {
        let q = p(18_446_744_073_709_551_557);
        let d = to_digits(&BigUint::from(u64::MAX), q);
        assert_eq!(d.digits(), &[58, 1]);
        assert_eq!(d.value(), BigUint::from(u64::MAX));
    }

    proptest! {
        #[test]
        fn round_trip_big(limbs in prop::collection::vec(any::<u64>(), 0..12),
                          pv in prop::sample::select(vec![2u64, 3, 7, 251, 65_537, 1_000_000_007])) {
            let n = BigUint::new(limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect());
            let d = to_digits(&n, p(pv));
            prop_assert!(d.digits().iter().all(|&x| x < pv));
            prop_assert!(d.digits().last() != Some(&0));
            prop_assert_eq!(from_digits(d.digits(), p(pv)).unwrap(), n);
        }
    }
}
