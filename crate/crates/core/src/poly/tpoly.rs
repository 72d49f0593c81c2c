use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::FpElem;
use crate::error::{Error, Result};
use crate::poly::{parse, TermOrder};

/// A polynomial in `t` over `F_p`, dense and ascending.
///
/// Canonical form has no trailing zero coefficients; the zero polynomial has
/// no coefficients at all, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl TPoly {
    pub fn zero(p: u64) -> Self {
        TPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(FpElem::one(p))
    }

    pub fn constant(c: FpElem) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: FpElem, e: usize) -> Self {
        let p = c.modulus();
        if c.is_zero() {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c.value();
        TPoly { p, coeffs }
    }

    /// The variable `t`.
    pub fn t(p: u64) -> Self {
        Self::monomial(FpElem::one(p), 1)
    }

    /// Builds from ascending integer coefficients, reducing modulo `p`.
    pub fn from_coeffs<I: IntoIterator<Item = i64>>(p: u64, coeffs: I) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
        Self::from_raw(p, coeffs)
    }

    pub(crate) fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        TPoly { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient values, each in `[0, p)`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FpElem {
        FpElem::from_reduced(self.coeffs.get(i).copied().unwrap_or(0), self.p)
    }

    pub fn leading_coeff(&self) -> Option<FpElem> {
        self.coeffs.last().map(|&c| FpElem::from_reduced(c, self.p))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// `Some((c, e))` when the polynomial is the single term `c * t^e`.
    pub fn as_monomial(&self) -> Option<(FpElem, usize)> {
        let e = self.valuation()?;
        (e + 1 == self.coeffs.len()).then(|| (self.coeff(e), e))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn check_field(&self, other: &TPoly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &TPoly) -> Result<TPoly> {
        self.check_field(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let s = self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0);
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Ok(Self::from_raw(p, coeffs))
    }

    pub fn try_sub(&self, other: &TPoly) -> Result<TPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &TPoly) -> Result<TPoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p));
        }
        let p = self.p;
        let (short, long) = if self.coeffs.len() <= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        // products are < (p-1)^2, so reduction can wait this many additions
        let batch = ((u64::MAX - p) / ((p - 1) * (p - 1)).max(1)).min(short.len() as u64).max(1) as usize;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for chunk in short.chunks(batch).enumerate() {
            let (ci, part) = chunk;
            let base = ci * batch;
            for (i, &a) in part.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in out[base + i..].iter_mut().zip(long) {
                    *o += a * b;
                }
            }
            for o in out.iter_mut() {
                *o %= p;
            }
        }
        Ok(Self::from_raw(p, out))
    }

    /// `self += a * b` in place, cheap when either factor is a monomial.
    pub fn add_mul_assign(&mut self, a: &TPoly, b: &TPoly) {
        debug_assert!(self.p == a.p && a.p == b.p);
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = self.p;
        let (mono, other) = match (a.as_monomial(), b.as_monomial()) {
            (Some(m), _) => (m, b),
            (None, Some(m)) => (m, a),
            (None, None) => {
                *self = &*self + &(a * b);
                return;
            }
        };
        let (c, e) = (mono.0.value(), mono.1);
        let needed = e + other.coeffs.len();
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, 0);
        }
        for (o, &x) in self.coeffs[e..].iter_mut().zip(&other.coeffs) {
            *o = (*o + c * x) % p;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: FpElem) -> TPoly {
        debug_assert_eq!(c.modulus(), self.p);
        if c.is_zero() {
            return Self::zero(self.p);
        }
        let coeffs = self.coeffs.iter().map(|&a| a * c.value() % self.p).collect();
        TPoly { p: self.p, coeffs }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: usize) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        TPoly { p: self.p, coeffs }
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> TPoly {
        match self.leading_coeff() {
            Some(lc) => self.scale(lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Euclidean division over `F_p`.
    pub fn div_rem(&self, divisor: &TPoly) -> Result<(TPoly, TPoly)> {
        self.check_field(divisor)?;
        let lc = divisor.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        let p = self.p;
        let lc_inv = lc.inv().expect("nonzero leading coefficient").value();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * lc_inv % p;
            if c == 0 {
                continue;
            }
            quo[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = i - dd + j;
                    rem[k] = (rem[k] + (p - c) * b) % p;
                }
            }
        }
        Ok((Self::from_raw(p, quo), Self::from_raw(p, rem)))
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &TPoly) -> Option<TPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        assert_eq!(self.p, other.p, "gcd over different prime fields");
        let p = self.p;
        let (va, vb) = match (self.valuation(), other.valuation()) {
            (None, None) => return Self::zero(p),
            (None, Some(_)) => return other.monic(),
            (Some(_), None) => return self.monic(),
            (Some(va), Some(vb)) => (va, vb),
        };
        // t is prime, so its power splits off
        let v = va.min(vb);
        let mut a = TPoly::from_raw(p, self.coeffs[va..].to_vec());
        let mut b = TPoly::from_raw(p, other.coeffs[vb..].to_vec());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::monomial(FpElem::one(p), v);
            }
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic().shift(v)
    }

    /// The image under `t -> s^2`, written again in the letter `t`.
    pub fn substitute_square(&self) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        TPoly { p: self.p, coeffs }
    }

    /// Nonzero terms as `(coefficient, exponent)` pairs in the given order.
    pub fn terms(&self, order: TermOrder) -> Vec<(FpElem, usize)> {
        let mut terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (FpElem::from_reduced(c, self.p), e))
            .collect();
        if order == TermOrder::Descending {
            terms.reverse();
        }
        terms
    }

    pub fn format(&self, order: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts = self
            .terms(order)
            .into_iter()
            .map(|(c, e)| {
                let (neg, mag) = signed_magnitude(c);
                let body = match (mag, e) {
                    (m, 0) => m.to_string(),
                    (1, 1) => "t".to_string(),
                    (1, e) => format!("t^{e}"),
                    (m, 1) => format!("{m}*t"),
                    (m, e) => format!("{m}*t^{e}"),
                };
                (neg, body)
            })
            .collect::<Vec<_>>();
        join_signed(&parts)
    }

    pub fn parse(s: &str, p: u64) -> Result<TPoly> {
        let x = parse::parse_xpoly(s, p)?;
        match x.degree() {
            None => Ok(TPoly::zero(p)),
            Some(0) => Ok(x.coeff(0)),
            Some(_) => Err(Error::Parse(format!("unexpected X in polynomial in t: {s}"))),
        }
    }
}

/// Sign and magnitude used for display: `p - 1` prints as a bare minus sign.
pub(crate) fn signed_magnitude(c: FpElem) -> (bool, u64) {
    if c.is_minus_one() {
        (true, 1)
    } else {
        (false, c.value())
    }
}

pub(crate) fn join_signed(parts: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(TermOrder::Descending))
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        self.try_add(rhs).expect("polynomials over the same field")
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self.try_sub(rhs).expect("polynomials over the same field")
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.try_mul(rhs).expect("polynomials over the same field")
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        let p = self.p;
        let coeffs = self.coeffs.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect();
        TPoly { p, coeffs }
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(self, rhs: TPoly) -> TPoly {
        &self + &rhs
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, rhs: TPoly) -> TPoly {
        &self - &rhs
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, rhs: TPoly) -> TPoly {
        &self * &rhs
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}
