use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::poly::TPoly;

/// An element of `F_p(t)` in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: TPoly,
    den: TPoly,
}

impl RatFun {
    /// Panics if `den` is zero.
    pub fn new(num: TPoly, den: TPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let p = num.p();
        if num.is_zero() {
            return RatFun { num, den: TPoly::one(p) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        let lc = den.leading_coeff().unwrap();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(num: TPoly) -> Self {
        let p = num.p();
        RatFun { num, den: TPoly::one(p) }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_poly(TPoly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        Self::from_poly(TPoly::one(p))
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Option<RatFun> {
        (!self.is_zero()).then(|| RatFun::new(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.p());
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by zero in F_p(t)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let p = 5;
        let t1 = TPoly::from_coeffs(p, [1, 1]);
        let num = &t1 * &TPoly::from_coeffs(p, [0, 2]);
        let den = &t1 * &TPoly::from_coeffs(p, [3, 3]);
        let r = RatFun::new(num, den);
        assert!(r.denominator().leading_coeff().unwrap().is_one());
        assert!(r.numerator().gcd(r.denominator()).is_one());
        assert_eq!(r.to_string(), "(-t)/(t + 1)");
        let back = &(&r * &r.inv().unwrap()) - &RatFun::one(p);
        assert!(back.is_zero());
    }
}
