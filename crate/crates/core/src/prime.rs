use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::{Error, ExactNat, Result};

const TRIAL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Why a candidate modulus was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositeWitness {
    /// 0 and 1 are not prime.
    BelowTwo,
    /// Found a small prime factor by trial division.
    TrialDivisor(u64),
    /// A Miller-Rabin round with this base proved compositeness.
    MillerRabinBase(u64),
}

impl fmt::Display for CompositeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositeWitness::BelowTwo => f.write_str("values below 2 are not prime"),
            CompositeWitness::TrialDivisor(d) => write!(f, "trial division found factor {d}"),
            CompositeWitness::MillerRabinBase(a) => {
                write!(f, "Miller-Rabin round with base {a} proved it composite")
            }
        }
    }
}

/// `a * b mod m` for `a, b < m`.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < m && b < m);
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for every `u64`: the first twelve primes as bases suffice
/// below 3.3 * 10^24.
fn composite_witness(n: u64) -> Option<CompositeWitness> {
    if n < 2 {
        return Some(CompositeWitness::BelowTwo);
    }
    for &d in &TRIAL_PRIMES {
        if n == d {
            return None;
        }
        if n.is_multiple_of(d) {
            return Some(CompositeWitness::TrialDivisor(d));
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &TRIAL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return Some(CompositeWitness::MillerRabinBase(a));
    }
    None
}

/// A machine-word prime, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        match composite_witness(p) {
            None => Ok(PrimeModulus(p)),
            Some(witness) => Err(Error::NotPrime { p, witness }),
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn residue(self, value: u64) -> Residue {
        Residue {
            value: value % self.0,
            modulus: self,
        }
    }

    /// Reduces an arbitrary-precision natural number (Horner over the
    /// 64-bit limbs, most significant first).
    pub fn reduce(self, n: &ExactNat) -> Residue {
        let p = self.0 as u128;
        let mut acc: u128 = 0;
        for limb in n.iter_u64_digits().rev() {
            acc = ((acc << 64) | limb as u128) % p;
        }
        Residue {
            value: acc as u64,
            modulus: self,
        }
    }

    pub(crate) fn check_same(self, other: PrimeModulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An integer in `[0, p)` tagged with its modulus.
///
/// Arithmetic operators assume both operands share a modulus; mixing moduli
/// is a logic error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: PrimeModulus,
}

impl Residue {
    pub fn zero(p: PrimeModulus) -> Self {
        p.residue(0)
    }

    pub fn one(p: PrimeModulus) -> Self {
        p.residue(1)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        Residue {
            value: pow_mod(self.value, exp, self.modulus.0),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus.0 - 2))
        }
    }

    fn same(self, rhs: Residue) {
        assert_eq!(self.modulus, rhs.modulus, "residues over different moduli");
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        self.same(rhs);
        let p = self.modulus.0;
        let s = self.value as u128 + rhs.value as u128;
        Residue {
            value: (s % p as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Residue) -> Residue {
        self.same(rhs);
        let p = self.modulus.0;
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            p - (rhs.value - self.value)
        };
        Residue {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Residue) -> Residue {
        self.same(rhs);
        Residue {
            value: mul_mod(self.value, rhs.value, self.modulus.0),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
