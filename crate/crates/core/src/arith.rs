//! Prime-field arithmetic and binomial coefficients modulo `p`.
//!
//! Every coefficient of the U_t matrix is a signed sum of integer binomials, so
//! all scalars in this crate live in the prime field `F_p` even when `q = p^r`
//! with `r > 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The parameters `p`, `r` and `q = p^r` of the constant field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    p: u64,
    r: u32,
    q: u64,
}

impl FieldParams {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if r == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let q = p.checked_pow(r).filter(|q| *q < MAX_MODULUS).ok_or(Error::ModulusTooLarge(p))?;
        Ok(FieldParams { p, r, q })
    }

    /// Recovers `(p, r)` from `q`, rejecting anything that is not a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut rest = q;
        let mut r = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p, r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, p: u64) -> Self {
        let value = value.rem_euclid(p as i64) as u64;
        FpElem { value, modulus: p }
    }

    pub(crate) fn from_reduced(value: u64, p: u64) -> Self {
        debug_assert!(value < p);
        FpElem { value, modulus: p }
    }

    pub fn zero(p: u64) -> Self {
        FpElem { value: 0, modulus: p }
    }

    pub fn one(p: u64) -> Self {
        FpElem { value: 1 % p, modulus: p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// `p - 1` for odd `p`, i.e. the element rendered as a bare minus sign.
    pub fn is_minus_one(&self) -> bool {
        self.modulus > 2 && self.value == self.modulus - 1
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FpElem::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        FpElem::from_reduced(if s >= self.modulus { s - self.modulus } else { s }, self.modulus)
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        self + (-rhs)
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        if self.value == 0 {
            self
        } else {
            FpElem::from_reduced(self.modulus - self.value, self.modulus)
        }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem::from_reduced(self.value * rhs.value % self.modulus, self.modulus)
    }
}

impl AddAssign for FpElem {
    fn add_assign(&mut self, rhs: FpElem) {
        *self = *self + rhs;
    }
}

impl SubAssign for FpElem {
    fn sub_assign(&mut self, rhs: FpElem) {
        *self = *self - rhs;
    }
}

impl MulAssign for FpElem {
    fn mul_assign(&mut self, rhs: FpElem) {
        *self = *self * rhs;
    }
}

/// `C(a, b) mod p` for single base-`p` digits `0 <= a, b < p`.
fn digit_binom(a: u64, b: u64, p: u64) -> FpElem {
    if b > a {
        return FpElem::zero(p);
    }
    let b = b.min(a - b);
    let mut num = FpElem::one(p);
    let mut den = FpElem::one(p);
    for i in 0..b {
        num *= FpElem::from_reduced(a - i, p);
        den *= FpElem::from_reduced(i + 1, p);
    }
    // all factors are below p, hence units
    num * den.inv().expect("digit factorials are units mod p")
}

/// `C(n, m) mod p` by Lucas's theorem.
///
/// `C(n, m) = 0` whenever `m < 0` or `m > n`. A negative upper index is a
/// contract violation: no index in the U_t formula ever produces one.
pub fn binom_mod_p(n: i64, m: i64, p: u64) -> Result<FpElem> {
    if n < 0 {
        return Err(Error::NegativeUpperIndex(n));
    }
    if m < 0 || m > n {
        return Ok(FpElem::zero(p));
    }
    let (mut n, mut m) = (n as u64, m as u64);
    let mut acc = FpElem::one(p);
    while m > 0 {
        acc *= digit_binom(n % p, m % p, p);
        if acc.is_zero() {
            break;
        }
        n /= p;
        m /= p;
    }
    Ok(acc)
}

/// `(-1)^j` in `F_p`.
pub fn sign_pow(j: u64, p: u64) -> FpElem {
    if j.is_multiple_of(2) {
        FpElem::one(p)
    } else {
        -FpElem::one(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal_rows(max_n: usize, p: u64) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = vec![vec![1 % p]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![1 % p; n + 1];
            for m in 1..n {
                row[m] = (prev[m - 1] + prev[m]) % p;
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn field_params() {
        let f = FieldParams::from_q(25).unwrap();
        assert_eq!((f.p(), f.r(), f.q()), (5, 2, 25));
        let f = FieldParams::from_q(16).unwrap();
        assert_eq!((f.p(), f.r()), (2, 4));
        assert_eq!(FieldParams::from_q(6), Err(Error::NotPrimePower(6)));
        assert_eq!(FieldParams::from_q(1), Err(Error::NotPrimePower(1)));
        assert_eq!(FieldParams::new(9, 1), Err(Error::NotPrime(9)));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod_p(5, 2, 3).unwrap().value(), 1);
        assert_eq!(binom_mod_p(4, -2, 5).unwrap().value(), 0);
        assert_eq!(binom_mod_p(3, 7, 5).unwrap().value(), 0);
        assert_eq!(binom_mod_p(-1, 0, 5), Err(Error::NegativeUpperIndex(-1)));
    }

    #[test]
    fn binom_q_plus_y_choose_q_minus_one_vanishes() {
        for q in [3u64, 4, 5, 7, 8, 9, 16, 25, 27] {
            let p = FieldParams::from_q(q).unwrap().p();
            for y in 0..=q - 2 {
                let c = binom_mod_p((q + y) as i64, (q - 1) as i64, p).unwrap();
                assert!(c.is_zero(), "q={q} y={y}");
            }
        }
    }

    #[test]
    fn sign_pow_examples() {
        assert_eq!(sign_pow(3, 5).value(), 4);
        assert_eq!(sign_pow(2, 7).value(), 1);
        assert_eq!(sign_pow(1, 2).value(), 1);
    }

    #[test]
    fn binom_matches_pascal() {
        for p in [2u64, 3, 5] {
            let rows = pascal_rows(3000, p);
            for (n, row) in rows.iter().enumerate() {
                for (m, &expected) in row.iter().enumerate() {
                    assert_eq!(binom_mod_p(n as i64, m as i64, p).unwrap().value(), expected, "C({n},{m}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn inverse() {
        for v in 1..7 {
            let a = FpElem::new(v, 7);
            assert!((a * a.inv().unwrap()).is_one());
        }
        assert_eq!(FpElem::zero(7).inv(), None);
        assert_eq!(FpElem::new(-3, 7).value(), 4);
    }

    proptest! {
        #[test]
        fn binom_edges_and_symmetry(n in 0i64..5000, m in 0i64..5000, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            prop_assert!(binom_mod_p(n, 0, p).unwrap().is_one());
            prop_assert!(binom_mod_p(n, n, p).unwrap().is_one());
            let m = m % (n + 1);
            prop_assert_eq!(binom_mod_p(n, m, p).unwrap(), binom_mod_p(n, n - m, p).unwrap());
        }
    }
}
