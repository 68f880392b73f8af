//! Dense univariate polynomials over `Z/pZ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::ExactOracle;
use crate::{Error, PrimeModulus, Residue, Result};

/// Upper bound on polynomial degrees produced by [`poly_pow`] and the checks
/// built on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreeCap(pub usize);

impl DegreeCap {
    pub const DEFAULT: DegreeCap = DegreeCap(1 << 16);

    fn check(self, degree: u128) -> Result<()> {
        if degree > self.0 as u128 {
            Err(Error::DegreeCapExceeded {
                degree,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for DegreeCap {
    fn default() -> Self {
        DegreeCap::DEFAULT
    }
}

/// Coefficient `k` is stored at index `k`; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyModP {
    coeffs: Vec<u64>,
    modulus: PrimeModulus,
}

impl PolyModP {
    /// Reduces every coefficient mod `p` and trims trailing zeros.
    pub fn new(mut coeffs: Vec<u64>, p: PrimeModulus) -> Self {
        let pv = p.get();
        for c in &mut coeffs {
            *c %= pv;
        }
        let mut poly = PolyModP { coeffs, modulus: p };
        poly.trim();
        poly
    }

    pub fn zero(p: PrimeModulus) -> Self {
        PolyModP {
            coeffs: Vec::new(),
            modulus: p,
        }
    }

    pub fn one(p: PrimeModulus) -> Self {
        PolyModP::new(vec![1], p)
    }

    /// `1 + x^d`; for `d = 0` this is the constant 2.
    pub fn one_plus_x_pow(d: usize, p: PrimeModulus) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] += 1;
        coeffs[d] += 1;
        PolyModP::new(coeffs, p)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Residue {
        self.modulus
            .residue(self.coeffs.get(k).copied().unwrap_or(0))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &PolyModP) -> Result<PolyModP> {
        self.modulus.check_same(other.modulus)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.clone();
        for (c, &s) in out.coeffs.iter_mut().zip(&short.coeffs) {
            *c = (self.modulus.residue(*c) + self.modulus.residue(s)).value();
        }
        out.trim();
        Ok(out)
    }
}

/// Schoolbook convolution, skipping zero coefficients on both sides.
pub fn poly_mul(f: &PolyModP, g: &PolyModP) -> Result<PolyModP> {
    f.modulus.check_same(g.modulus)?;
    let p = f.modulus;
    if f.is_zero() || g.is_zero() {
        return Ok(PolyModP::zero(p));
    }
    let pv = p.get();
    let g_terms: Vec<(usize, u64)> = g
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    let mut out = vec![0u64; f.coeffs.len() + g.coeffs.len() - 1];
    let narrow = pv < 1 << 32;
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let row = &mut out[i..];
        if narrow {
            // acc < p and a*b < p^2, so the sum stays below 2^64
            for &(j, b) in &g_terms {
                row[j] = (row[j] + a * b) % pv;
            }
        } else {
            for &(j, b) in &g_terms {
                row[j] = ((row[j] as u128 + a as u128 * b as u128) % pv as u128) as u64;
            }
        }
    }
    let mut poly = PolyModP {
        coeffs: out,
        modulus: p,
    };
    poly.trim();
    Ok(poly)
}

/// `f^e` by square-and-multiply; fails if `e * deg(f)` exceeds `cap`.
pub fn poly_pow(f: &PolyModP, e: u64, cap: DegreeCap) -> Result<PolyModP> {
    let p = f.modulus;
    if let Some(d) = f.degree() {
        cap.check(d as u128 * e as u128)?;
    }
    let mut acc = PolyModP::one(p);
    let mut base = f.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Coefficient-wise congruence mod `p`. Both inputs are already reduced, so
/// this is equality of canonical forms.
pub fn congruent_coeffwise(f: &PolyModP, g: &PolyModP) -> Result<bool> {
    f.modulus.check_same(g.modulus)?;
    Ok(f.coeffs == g.coeffs)
}

fn block_exponent(a: u64, i: usize, p: PrimeModulus, cap: DegreeCap) -> Result<(usize, u64)> {
    let too_big = || Error::DegreeCapExceeded {
        degree: u128::MAX,
        cap: cap.0,
    };
    let scale = u32::try_from(i)
        .ok()
        .and_then(|i| p.get().checked_pow(i))
        .ok_or_else(too_big)?;
    let total = (a as u128) * (scale as u128);
    cap.check(total)?;
    Ok((scale as usize, total as u64))
}

/// `(1 + x)^{a p^i} == (1 + x^{p^i})^a` coefficient-wise.
pub fn freshman_check(i: usize, a: u64, p: PrimeModulus, cap: DegreeCap) -> Result<bool> {
    let (scale, total) = block_exponent(a, i, p, cap)?;
    let lhs = poly_pow(&PolyModP::one_plus_x_pow(1, p), total, cap)?;
    let rhs = poly_pow(&PolyModP::one_plus_x_pow(scale, p), a, cap)?;
    congruent_coeffwise(&lhs, &rhs)
}

/// The coefficient of `x^{b p^i}` in `(1 + x)^{a p^i}` equals `C(a, b) mod p`,
/// the right side taken from the exact oracle. Requires `b <= a < p`.
pub fn coeff_extract_check(
    a: u64,
    b: u64,
    i: usize,
    p: PrimeModulus,
    cap: DegreeCap,
) -> Result<bool> {
    if a >= p.get() {
        return Err(Error::ArgumentOutOfRange {
            name: "a",
            value: a,
            bound: p.get(),
        });
    }
    if b > a {
        return Err(Error::ArgumentOutOfRange {
            name: "b",
            value: b,
            bound: a + 1,
        });
    }
    let (scale, total) = block_exponent(a, i, p, cap)?;
    let expansion = poly_pow(&PolyModP::one_plus_x_pow(1, p), total, cap)?;
    let got = expansion.coeff(b as usize * scale);
    let want = p.reduce(&ExactOracle::new(u64::MAX).binom_exact(a, b)?);
    Ok(got == want)
}

/// The lowest interior term `0 < k < a p^i` of `(1 + x)^{a p^i}` whose
/// coefficient is nonzero mod `p`, if any.
pub fn first_interior_nonzero(
    a: u64,
    i: usize,
    p: PrimeModulus,
    cap: DegreeCap,
) -> Result<Option<(usize, Residue)>> {
    let (_, total) = block_exponent(a, i, p, cap)?;
    let expansion = poly_pow(&PolyModP::one_plus_x_pow(1, p), total, cap)?;
    Ok((1..total as usize)
        .map(|k| (k, expansion.coeff(k)))
        .find(|(_, c)| !c.is_zero()))
}

/// Every coefficient of `(1 + x)^{a p^i}` strictly between `x^0` and the top
/// term vanishes mod `p`.
///
/// Holds for `a = 1`. For a digit `2 <= a < p` and `i >= 1` the coefficient of
/// `x^{p^i}` is `C(a, 1) = a != 0`, so the check fails there.
pub fn interior_vanishing_check(a: u64, i: usize, p: PrimeModulus, cap: DegreeCap) -> Result<bool> {
    Ok(first_interior_nonzero(a, i, p, cap)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pascal_rows;
    use proptest::prelude::*;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    fn poly(c: &[u64], pv: u64) -> PolyModP {
        PolyModP::new(c.to_vec(), p(pv))
    }

    #[test]
    fn mul_examples() {
        let f = poly(&[3, 0, 4, 1], 5);
        assert_eq!(poly_mul(&f, &PolyModP::one(p(5))).unwrap(), f);
        let x1 = poly(&[1, 1], 2);
        assert_eq!(poly_mul(&x1, &x1).unwrap(), poly(&[1, 0, 1], 2));
        assert!(poly_mul(&f, &PolyModP::zero(p(5))).unwrap().is_zero());
        assert_eq!(
            poly_mul(&f, &x1),
            Err(Error::ModulusMismatch { left: 5, right: 2 })
        );
    }

    #[test]
    fn pow_examples() {
        let cap = DegreeCap::DEFAULT;
        assert_eq!(
            poly_pow(&poly(&[1, 1], 7), 0, cap).unwrap(),
            PolyModP::one(p(7))
        );
        assert_eq!(
            poly_pow(&poly(&[1, 1], 3), 3, cap).unwrap(),
            poly(&[1, 0, 0, 1], 3)
        );
        assert_eq!(
            poly_pow(&poly(&[1, 1], 2), 4, cap).unwrap(),
            poly(&[1, 0, 0, 0, 1], 2)
        );
        assert_eq!(
            poly_pow(&PolyModP::zero(p(3)), 0, cap).unwrap(),
            PolyModP::one(p(3))
        );
        assert!(poly_pow(&PolyModP::zero(p(3)), 5, cap).unwrap().is_zero());
        assert_eq!(
            poly_pow(&poly(&[1, 1], 3), 11, DegreeCap(10)),
            Err(Error::DegreeCapExceeded {
                degree: 11,
                cap: 10
            })
        );
        // constants are never capped
        assert_eq!(
            poly_pow(&poly(&[2], 3), 1 << 40, DegreeCap(0)).unwrap(),
            poly(&[1], 3)
        );
    }

    #[test]
    fn congruence_examples() {
        let f = poly(&[1, 2, 3], 5);
        assert!(congruent_coeffwise(&f, &f).unwrap());
        let lhs = poly_pow(&poly(&[1, 1], 5), 5, DegreeCap::DEFAULT).unwrap();
        assert!(congruent_coeffwise(&lhs, &PolyModP::one_plus_x_pow(5, p(5))).unwrap());
        assert!(!congruent_coeffwise(&poly(&[1, 1], 3), &poly(&[1, 2], 3)).unwrap());
        // integer coefficients congruent mod p land on the same canonical form
        assert!(congruent_coeffwise(&poly(&[8, 13, 5], 5), &poly(&[3, 3], 5)).unwrap());
        assert!(congruent_coeffwise(&f, &poly(&[1], 7)).is_err());
    }

    #[test]
    fn freshman_examples() {
        let cap = DegreeCap::DEFAULT;
        assert!(freshman_check(1, 1, p(2), cap).unwrap());
        assert!(freshman_check(2, 1, p(3), cap).unwrap());
        for pv in [2, 3, 5, 7, 11] {
            assert!(freshman_check(0, 1, p(pv), cap).unwrap());
        }
        assert!(matches!(
            freshman_check(20, 1, p(2), cap),
            Err(Error::DegreeCapExceeded { .. })
        ));
        assert!(freshman_check(1000, 1, p(2), cap).is_err());
    }

    #[test]
    fn coeff_extract_examples() {
        let cap = DegreeCap::DEFAULT;
        assert!(coeff_extract_check(1, 1, 1, p(2), cap).unwrap());
        let o = ExactOracle::default();
        assert_eq!(p(3).reduce(&o.binom_exact(6, 3).unwrap()).value(), 2);
        assert!(coeff_extract_check(2, 1, 1, p(3), cap).unwrap());
        for (a, i) in [(0, 0), (3, 2), (4, 1)] {
            assert!(coeff_extract_check(a, 0, i, p(5), cap).unwrap());
        }
        assert!(coeff_extract_check(5, 1, 1, p(5), cap).is_err());
        assert!(coeff_extract_check(2, 3, 1, p(5), cap).is_err());
    }

    #[test]
    fn interior_vanishing_range() {
        let cap = DegreeCap::DEFAULT;
        for pv in [2u64, 3, 5, 7] {
            for i in 1..=3 {
                assert!(interior_vanishing_check(1, i, p(pv), cap).unwrap());
                for a in 2..pv {
                    let first = first_interior_nonzero(a, i, p(pv), cap).unwrap();
                    assert_eq!(first, Some((pv.pow(i as u32) as usize, p(pv).residue(a))));
                }
            }
        }
    }

    #[test]
    fn coefficients_match_additive_oracle() {
        let cap = DegreeCap::DEFAULT;
        for pv in [2u64, 3, 5, 7] {
            let one_plus_x = poly(&[1, 1], pv);
            for (e, row) in pascal_rows(p(pv)).take(201).enumerate() {
                let f = poly_pow(&one_plus_x, e as u64, cap).unwrap();
                assert!(congruent_coeffwise(&f, &PolyModP::new(row, p(pv))).unwrap());
            }
        }
    }

    #[test]
    fn wide_modulus_mul() {
        let q = p(18_446_744_073_709_551_557);
        let f = PolyModP::new(vec![q.get() - 1, q.get() - 2], q);
        let sq = poly_mul(&f, &f).unwrap();
        // (-1 - 2x)^2 = 1 + 4x + 4x^2
        assert_eq!(sq.coeffs(), &[1, 4, 4]);
    }

    fn arb_poly(pv: u64) -> impl Strategy<Value = PolyModP> {
        prop::collection::vec(0..pv, 0..=65).prop_map(move |c| poly(&c, pv))
    }

    fn arb_triple() -> impl Strategy<Value = (PolyModP, PolyModP, PolyModP)> {
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
            .prop_flat_map(|pv| (arb_poly(pv), arb_poly(pv), arb_poly(pv)))
    }

    proptest! {
        #[test]
        fn ring_laws((f, g, h) in arb_triple()) {
            let fg = poly_mul(&f, &g).unwrap();
            prop_assert_eq!(&fg, &poly_mul(&g, &f).unwrap());
            prop_assert_eq!(
                poly_mul(&fg, &h).unwrap(),
                poly_mul(&f, &poly_mul(&g, &h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                poly_mul(&f, &g.add(&h).unwrap()).unwrap(),
                fg.add(&poly_mul(&f, &h).unwrap()).unwrap()
            );
            if let (Some(df), Some(dg)) = (f.degree(), g.degree()) {
                prop_assert_eq!(fg.degree(), Some(df + dg));
            }
        }
    }
}
