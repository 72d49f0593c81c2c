//! One-sided separability certificate by reduction modulo `f(t)`.
//!
//! Work in the field `R = F_p[t]/(f)` for a fixed irreducible `f`. If `lc(m)` is a unit in `R` and Euclid on `m mod f`, `m' mod f`
//! only ever divides by unit leading coefficients and ends at a unit constant,
//! then `1` lies in the ideal `(m, m')` of `R[X]`, so `Res(m, m')` is a unit
//! mod `f`, hence nonzero, hence `gcd(m, m')` is constant over `F_p(t)`.
//! Any other outcome is inconclusive and says nothing.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::FpElem;
use crate::poly::{TPoly, XPoly};

/// Degrees of the trial moduli.
const TRIAL_DEGREES: [usize; 2] = [61, 67];

struct Quotient {
    f: TPoly,
}

impl Quotient {
    fn reduce(&self, a: &TPoly) -> TPoly {
        if a.degree() < self.f.degree() {
            return a.clone();
        }
        a.div_rem(&self.f).expect("nonzero modulus").1
    }

    fn mul(&self, a: &TPoly, b: &TPoly) -> TPoly {
        self.reduce(&(a * b))
    }

    /// Inverse by the extended Euclidean algorithm, `None` for non-units.
    fn inv(&self, a: &TPoly) -> Option<TPoly> {
        let p = a.p();
        let (mut r0, mut r1) = (self.f.clone(), a.clone());
        let (mut s0, mut s1) = (TPoly::zero(p), TPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r0.leading_coeff()?;
        (r0.degree() == Some(0)).then(|| self.reduce(&s0.scale(c.inv().expect("nonzero constant"))))
    }

    fn pow(&self, a: &TPoly, mut e: u64) -> TPoly {
        let mut base = self.reduce(a);
        let mut acc = TPoly::one(a.p());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or: `f` of degree `n` is irreducible iff
    /// `gcd(t^(p^i) - t, f) = 1` for `1 <= i <= n/2`.
    fn is_irreducible(&self) -> bool {
        let p = self.f.p();
        let n = self.f.degree().unwrap_or(0);
        let t = TPoly::t(p);
        let mut frob = t.clone();
        for _ in 0..n / 2 {
            frob = self.pow(&frob, p);
            if !(&frob - &t).gcd(&self.f).is_one() {
                return false;
            }
        }
        n > 0
    }

    fn reduce_x(&self, m: &XPoly) -> Vec<TPoly> {
        let mut v: Vec<TPoly> = m.coeffs().iter().map(|c| self.reduce(c)).collect();
        trim(&mut v);
        v
    }

    fn certifies(&self, m: &XPoly) -> bool {
        let mut a = self.reduce_x(m);
        if a.len() != m.coeffs().len() || self.inv(a.last().expect("nonzero")).is_none() {
            return false;
        }
        let mut b = self.reduce_x(&m.derivative());
        while !b.is_empty() {
            let Some(lc_inv) = self.inv(b.last().unwrap()) else {
                return false;
            };
            if b.len() == 1 {
                return true;
            }
            // a <- a mod b
            while a.len() >= b.len() {
                let shift = a.len() - b.len();
                let c = self.mul(a.last().unwrap(), &lc_inv);
                for (i, bc) in b.iter().enumerate() {
                    a[shift + i] = self.reduce(&(&a[shift + i] - &(&c * bc)));
                }
                debug_assert!(a.last().unwrap().is_zero());
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        false
    }
}

fn trim(v: &mut Vec<TPoly>) {
    while v.last().is_some_and(TPoly::is_zero) {
        v.pop();
    }
}

/// `true` certifies that `m` has no repeated or inseparable factor over
/// `F_p(t)`; `false` is inconclusive.
pub fn separable_mod_certificate(m: &XPoly) -> bool {
    let p = m.p();
    if m.degree().is_none_or(|d| d == 0) {
        return false;
    }
    moduli(p).into_iter().any(|f| Quotient { f }.certifies(m))
}

/// First irreducible `t^e + g(t)` in a fixed enumeration of low parts `g`.
fn first_irreducible(p: u64, e: usize) -> TPoly {
    let lead = TPoly::monomial(FpElem::one(p), e);
    (1u64..)
        .map(|code| {
            // base-p digits of `code` as the coefficients of `g`
            let mut digits = Vec::new();
            let mut c = code;
            while c > 0 {
                digits.push((c % p) as i64);
                c /= p;
            }
            &lead + &TPoly::from_coeffs(p, digits)
        })
        .find(|f| Quotient { f: f.clone() }.is_irreducible())
        .expect("irreducible polynomials exist in every degree")
}

fn moduli(p: u64) -> Vec<TPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<TPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().unwrap().get(&p) {
        return found.clone();
    }
    let found: Vec<TPoly> = TRIAL_DEGREES.iter().map(|&e| first_irreducible(p, e)).collect();
    cache.lock().unwrap().insert(p, found.clone());
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::xpoly_gcd_over_fraction_field;
    use proptest::prelude::*;

    fn xp(s: &str, p: u64) -> XPoly {
        XPoly::parse(s, p).unwrap()
    }

    #[test]
    fn examples() {
        assert!(separable_mod_certificate(&xp("X^2 - t*X", 5)));
        assert!(separable_mod_certificate(&xp("X^2 - t^28", 5)));
        assert!(!separable_mod_certificate(&xp("X^2 + t^5", 2)));
        assert!(!separable_mod_certificate(&xp("X^4 + t*X^3 + t^5*X^2 + t^6*X", 2)));
        assert!(!separable_mod_certificate(&xp("X^2 + t*X + t^2", 3)));
        assert!(!separable_mod_certificate(&xp("X^3 - t", 3)));
        assert!(!separable_mod_certificate(&XPoly::one(3)));
    }

    #[test]
    fn irreducibility() {
        let q = |s: &str, p| Quotient { f: TPoly::parse(s, p).unwrap() };
        assert!(q("t^2 + 1", 3).is_irreducible());
        assert!(!q("t^2 + 2", 3).is_irreducible());
        assert!(q("t^3 + t + 1", 2).is_irreducible());
        assert!(!q("t^4 + t^2 + 1", 2).is_irreducible());
        // no roots and no quadratic factor in degree 4 over F_2
        assert!(q("t^4 + t + 1", 2).is_irreducible());
        for p in [2, 3, 5] {
            for f in moduli(p) {
                assert!(f.coeff(0).value() != 0);
            }
        }
    }

    #[test]
    fn certifies_scanned_min_polys() {
        assert!(separable_mod_certificate(&xp("X^4 - t^4*X^3 - t^12*X^2 + t^16*X", 3)));
    }

    #[test]
    fn inverse_in_quotient() {
        let p = 3;
        let q = Quotient { f: TPoly::parse("t^5 + t + 1", p).unwrap() };
        let a = TPoly::parse("t^3 + 2*t + 1", p).unwrap();
        let inv = q.inv(&a).unwrap();
        assert!(q.mul(&a, &inv).is_one());
    }

    fn arb_xpoly(p: u64) -> impl Strategy<Value = XPoly> {
        prop::collection::vec(prop::collection::vec(0i64..p as i64, 0..4), 1..5)
            .prop_map(move |cs| XPoly::from_coeffs(p, cs.into_iter().map(|c| TPoly::from_coeffs(p, c)).collect()))
    }

    proptest! {
        // the certificate never contradicts the exact gcd
        #[test]
        fn sound_against_exact_gcd(a in arb_xpoly(2), b in arb_xpoly(2), p3 in arb_xpoly(3)) {
            for m in [&a * &b, &(&a * &a) * &b, p3] {
                if m.degree().is_some_and(|d| d > 0) && separable_mod_certificate(&m) {
                    let g = xpoly_gcd_over_fraction_field(&m, &m.derivative());
                    prop_assert_eq!(g.degree(), Some(0));
                }
            }
        }
    }
}
