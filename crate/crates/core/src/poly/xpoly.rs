use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::FpElem;
use crate::error::{Error, Result};
use crate::poly::tpoly::{join_signed, signed_magnitude};
use crate::poly::{parse, RatFun, TPoly, TermOrder};

/// A polynomial in `X` with coefficients in `F_p[t]`, dense and ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    p: u64,
    coeffs: Vec<TPoly>,
}

impl XPoly {
    pub fn zero(p: u64) -> Self {
        XPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(TPoly::one(p))
    }

    pub fn constant(c: TPoly) -> Self {
        Self::from_coeffs(c.p(), vec![c])
    }

    /// `c * X^e`.
    pub fn monomial(c: TPoly, e: usize) -> Self {
        let p = c.p();
        let mut coeffs = vec![TPoly::zero(p); e];
        coeffs.push(c);
        Self::from_coeffs(p, coeffs)
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(TPoly::one(p), 1)
    }

    /// `X - root`.
    pub fn x_minus(root: &TPoly) -> Self {
        Self::from_coeffs(root.p(), vec![-root, TPoly::one(root.p())])
    }

    pub fn from_coeffs(p: u64, mut coeffs: Vec<TPoly>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.p() == p));
        while coeffs.last().is_some_and(TPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> TPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| TPoly::zero(self.p))
    }

    pub fn leading_coeff(&self) -> Option<&TPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(TPoly::is_one)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &TPoly) -> XPoly {
        Self::from_coeffs(self.p, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative `d/dX`, with the integer factors reduced mod `p`.
    pub fn derivative(&self) -> XPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(FpElem::new((i as u64 % self.p) as i64, self.p)))
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    /// Greatest common divisor of the coefficients, monic in `t`.
    pub fn content(&self) -> TPoly {
        self.coeffs.iter().fold(TPoly::zero(self.p), |g, c| g.gcd(c))
    }

    /// Divides out the content and scales so that the leading coefficient has
    /// leading term coefficient 1. This is the canonical representative of the
    /// class of `self` up to units of `F_p(t)`.
    pub fn primitive_normalized(&self) -> XPoly {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.content();
        let mut out: Vec<TPoly> = self.coeffs.iter().map(|c| c.exact_div(&content).unwrap()).collect();
        let lc = out.last().unwrap().leading_coeff().unwrap();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            out = out.iter().map(|c| c.scale(inv)).collect();
        }
        XPoly { p: self.p, coeffs: out }
    }

    /// Evaluates at `X = value`.
    pub fn eval(&self, value: &TPoly) -> TPoly {
        self.coeffs.iter().rev().fold(TPoly::zero(self.p), |acc, c| &(&acc * value) + c)
    }

    pub fn substitute_square(&self) -> XPoly {
        Self::from_coeffs(self.p, self.coeffs.iter().map(TPoly::substitute_square).collect())
    }

    /// Whether `self` divides `other` in `F_p(t)[X]`.
    pub fn divides(&self, other: &XPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = rat_div_rem(&to_rat(other), &to_rat(self));
        r.is_empty()
    }

    /// Least common multiple in `F_p(t)[X]`, content-cleared.
    pub fn lcm(&self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero(self.p);
        }
        let g = xpoly_gcd_over_fraction_field(self, other);
        let (q, r) = rat_div_rem(&to_rat(&(self * other)), &to_rat(&g));
        debug_assert!(r.is_empty());
        from_rat(self.p, &q)
    }

    pub fn format(&self, order: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut indices: Vec<usize> = (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        if order == TermOrder::Descending {
            indices.reverse();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for e in indices {
            let c = &self.coeffs[e];
            let xpart = match e {
                0 => String::new(),
                1 => "X".to_string(),
                e => format!("X^{e}"),
            };
            if e == 0 {
                // constant term: splice its own terms
                for (coef, te) in c.terms(order) {
                    let term = TPoly::monomial(coef, te);
                    let (neg, _) = signed_magnitude(coef);
                    let body = if neg { (-&term).to_string() } else { term.to_string() };
                    parts.push((neg, body));
                }
                continue;
            }
            match c.as_monomial() {
                Some((coef, _)) => {
                    let (neg, _) = signed_magnitude(coef);
                    let mag = if neg { -c } else { c.clone() };
                    let body = if mag.is_one() { xpart } else { format!("{mag}*{xpart}") };
                    parts.push((neg, body));
                }
                None => parts.push((false, format!("({})*{xpart}", c.format(order)))),
            }
        }
        join_signed(&parts)
    }

    pub fn parse(s: &str, p: u64) -> Result<XPoly> {
        parse::parse_xpoly(s, p)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(TermOrder::Descending))
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.p, rhs.p, "polynomials over different prime fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        XPoly::from_coeffs(self.p, coeffs)
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.p, rhs.p, "polynomials over different prime fields");
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero(self.p);
        }
        let mut out = vec![TPoly::zero(self.p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        XPoly::from_coeffs(self.p, out)
    }
}

impl Add for XPoly {
    type Output = XPoly;
    fn add(self, rhs: XPoly) -> XPoly {
        &self + &rhs
    }
}

impl Sub for XPoly {
    type Output = XPoly;
    fn sub(self, rhs: XPoly) -> XPoly {
        &self - &rhs
    }
}

impl Mul for XPoly {
    type Output = XPoly;
    fn mul(self, rhs: XPoly) -> XPoly {
        &self * &rhs
    }
}

// Polynomials over F_p(t) as ascending coefficient vectors without trailing zeros.
type RatPoly = Vec<RatFun>;

fn to_rat(f: &XPoly) -> RatPoly {
    f.coeffs.iter().cloned().map(RatFun::from_poly).collect()
}

fn trim(f: &mut RatPoly) {
    while f.last().is_some_and(RatFun::is_zero) {
        f.pop();
    }
}

/// Clears denominators and content; result is primitive and normalized.
fn from_rat(p: u64, f: &[RatFun]) -> XPoly {
    let den_lcm = f.iter().fold(TPoly::one(p), |l, c| {
        let d = c.denominator();
        let g = l.gcd(d);
        &l * &d.exact_div(&g).unwrap()
    });
    let coeffs = f.iter().map(|c| c.numerator() * &den_lcm.exact_div(c.denominator()).unwrap()).collect();
    XPoly::from_coeffs(p, coeffs).primitive_normalized()
}

fn rat_div_rem(a: &[RatFun], b: &[RatFun]) -> (RatPoly, RatPoly) {
    let p = b[0].p();
    let mut rem: RatPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lc_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut quo = vec![RatFun::zero(p); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] * &lc_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[shift + j] = &rem[shift + j] - &(&c * bj);
            }
        }
        quo[shift] = c;
        // the leading term cancels exactly
        debug_assert!(rem.last().unwrap().is_zero());
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Monic Euclidean gcd in `F_p(t)[X]`, returned content-cleared in `F_p[t][X]`.
///
/// Panics if both inputs are zero.
pub fn xpoly_gcd_over_fraction_field(f: &XPoly, g: &XPoly) -> XPoly {
    assert!(!(f.is_zero() && g.is_zero()), "gcd(0, 0) is undefined");
    let p = f.p;
    let mut a = to_rat(f);
    let mut b = to_rat(g);
    while !b.is_empty() {
        let lc_inv = b.last().unwrap().inv().unwrap();
        b = b.iter().map(|c| c * &lc_inv).collect();
        let (_, r) = rat_div_rem(&a, &b);
        a = b;
        b = r;
    }
    from_rat(p, &a)
}

/// True iff `gcd(f, f')` is constant in `X`: `f` is squarefree and separable
/// over `F_p(t)`. Since `F_p(t)` is not perfect, `f' = 0` makes any `f` of
/// positive degree fail.
pub fn is_separable_squarefree(f: &XPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = xpoly_gcd_over_fraction_field(f, &f.derivative());
    Ok(g.degree() == Some(0))
}
