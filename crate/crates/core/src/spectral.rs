//! Characteristic and minimal polynomials over `F_p[t]`, and the
//! diagonalizability certificate.
//!
//! A matrix over `F_p(t)` is diagonalizable over an algebraic closure iff its
//! minimal polynomial `m` has no repeated roots there, i.e. iff `gcd(m, m')`
//! is constant. Because `F_p(t)` is not perfect this also rules out
//! inseparable factors such as `X^2 + t^5` in characteristic 2.

use crate::error::{Error, Result};
use crate::hecke::UtBlock;
use crate::matrix::{rank_of_rows, TMatrix};
use crate::poly::{separable_mod_certificate, xpoly_gcd_over_fraction_field, TPoly, XPoly};

/// Why a minimal polynomial passes or fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    SeparableMinPoly,
    /// `gcd(m, m')` of positive degree.
    RepeatedOrInseparable {
        gcd: XPoly,
    },
}

impl Witness {
    pub fn describe(&self) -> String {
        match self {
            Witness::SeparableMinPoly => "separable_min_poly".to_string(),
            Witness::RepeatedOrInseparable { gcd } => format!("repeated_or_inseparable: gcd = {gcd}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub diagonalizable: bool,
    pub char_poly: XPoly,
    pub min_poly: XPoly,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub eigenvalue: TPoly,
    pub eigenvector: Vec<TPoly>,
}

impl EigenPair {
    pub fn new(eigenvalue: TPoly, eigenvector: Vec<TPoly>) -> Self {
        EigenPair { eigenvalue, eigenvector }
    }
}

/// `det(X I - M)` by Berkowitz's division-free recurrence.
pub fn char_poly_matrix(m: &TMatrix) -> XPoly {
    let p = m.p();
    let n = m.dim();
    // coefficients of the leading principal minor's char poly, highest power first
    let mut c: Vec<TPoly> = vec![TPoly::one(p)];
    for r in 0..n {
        let mut col = Vec::with_capacity(r + 2);
        col.push(TPoly::one(p));
        col.push(-m.get(r, r));
        let mut v: Vec<TPoly> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for step in 0..r {
            let mut dot = TPoly::zero(p);
            for (i, x) in v.iter().enumerate() {
                dot.add_mul_assign(m.get(r, i), x);
            }
            col.push(-&dot);
            if step + 1 < r {
                v = leading_minor_mul_vec(m, r, &v);
            }
        }
        let next: Vec<TPoly> = (0..r + 2)
            .map(|i| {
                let mut acc = TPoly::zero(p);
                for j in 0..=i.min(r) {
                    if let Some(cj) = c.get(j) {
                        acc.add_mul_assign(&col[i - j], cj);
                    }
                }
                acc
            })
            .collect();
        c = next;
    }
    c.reverse();
    XPoly::from_coeffs(p, c)
}

/// Product of the leading `r x r` principal submatrix with `v`.
fn leading_minor_mul_vec(m: &TMatrix, r: usize, v: &[TPoly]) -> Vec<TPoly> {
    (0..r)
        .map(|i| {
            let mut acc = TPoly::zero(m.p());
            for (j, x) in v.iter().enumerate() {
                acc.add_mul_assign(m.get(i, j), x);
            }
            acc
        })
        .collect()
}

pub fn char_poly(block: &UtBlock) -> XPoly {
    char_poly_matrix(&block.matrix)
}

/// `det(X I - M)` by plain cofactor expansion along the first row.
/// Exponential; kept as an independent check for small blocks.
pub fn char_poly_oracle_matrix(m: &TMatrix) -> Result<XPoly> {
    let n = m.dim();
    if n > 8 {
        return Err(Error::OracleTooLarge(n));
    }
    let p = m.p();
    let entries: Vec<Vec<XPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let neg = XPoly::constant(-m.get(i, j));
                    if i == j {
                        &neg + &XPoly::x(p)
                    } else {
                        neg
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_det(&entries, 0, &cols, p))
}

fn cofactor_det(a: &[Vec<XPoly>], row: usize, cols: &[usize], p: u64) -> XPoly {
    if cols.is_empty() {
        return XPoly::one(p);
    }
    let mut acc = XPoly::zero(p);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &a[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor_det(a, row + 1, &rest, p);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn char_poly_oracle(block: &UtBlock) -> Result<XPoly> {
    char_poly_oracle_matrix(&block.matrix)
}

/// `f(M) v` by Horner's rule.
pub fn apply_poly(f: &XPoly, m: &TMatrix, v: &[TPoly]) -> Vec<TPoly> {
    let p = m.p();
    let mut acc = vec![TPoly::zero(p); v.len()];
    for c in f.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        if !c.is_zero() {
            for (a, x) in acc.iter_mut().zip(v) {
                *a = &*a + &(c * x);
            }
        }
    }
    acc
}

/// `f(M)` as a matrix.
pub fn eval_poly_at_matrix(f: &XPoly, m: &TMatrix) -> TMatrix {
    let p = m.p();
    let n = m.dim();
    let mut acc = TMatrix::zeros(p, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m).add(&TMatrix::identity(p, n).scale(c));
    }
    acc
}

/// Least-degree polynomial annihilating `v` under `M`, from the first linear
/// relation among `v, Mv, M^2 v, ...` over `F_p(t)`. Elimination is kept
/// fraction-free: each reduced vector carries its combination of Krylov
/// vectors and both are divided by their joint content.
fn vector_annihilator(m: &TMatrix, v: &[TPoly]) -> XPoly {
    let p = m.p();
    let zero = TPoly::zero(p);
    let mut echelon: Vec<(usize, Vec<TPoly>, Vec<TPoly>)> = Vec::new();
    let mut krylov = v.to_vec();
    for step in 0..=v.len() {
        let mut vec = krylov.clone();
        let mut expr = vec![zero.clone(); step + 1];
        expr[step] = TPoly::one(p);
        for (pivot, bvec, bexpr) in &echelon {
            let b = vec[*pivot].clone();
            if b.is_zero() {
                continue;
            }
            let a = &bvec[*pivot];
            for (x, y) in vec.iter_mut().zip(bvec) {
                *x = &(a * x) - &(&b * y);
            }
            for (i, x) in expr.iter_mut().enumerate() {
                let y = bexpr.get(i).unwrap_or(&zero);
                *x = &(a * x) - &(&b * y);
            }
            let content = vec.iter().chain(expr.iter()).fold(zero.clone(), |g, c| g.gcd(c));
            if !content.is_one() {
                for x in vec.iter_mut().chain(expr.iter_mut()) {
                    *x = x.exact_div(&content).unwrap();
                }
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => return XPoly::from_coeffs(p, expr).primitive_normalized(),
            Some(pivot) => echelon.push((pivot, vec, expr)),
        }
        krylov = m.mul_vec(&krylov);
    }
    unreachable!("more than dim Krylov vectors are always dependent")
}

/// Minimal polynomial over `F_p(t)`: the lcm of the annihilators of the
/// standard basis vectors. A basis vector already killed by the running lcm
/// contributes nothing and is skipped.
pub fn min_poly_matrix(m: &TMatrix) -> XPoly {
    let p = m.p();
    let n = m.dim();
    let mut acc = XPoly::one(p);
    for i in 0..n {
        let mut e = vec![TPoly::zero(p); n];
        e[i] = TPoly::one(p);
        if apply_poly(&acc, m, &e).iter().all(TPoly::is_zero) {
            continue;
        }
        acc = acc.lcm(&vector_annihilator(m, &e));
    }
    acc
}

pub fn min_poly(block: &UtBlock) -> XPoly {
    min_poly_matrix(&block.matrix)
}

/// Separability verdict for an already computed minimal polynomial. A
/// modular certificate settles most separable cases; the exact gcd over
/// `F_p(t)` decides the rest and supplies the witness.
pub fn verdict_from_polys(char_poly: XPoly, min_poly: XPoly) -> Verdict {
    if separable_mod_certificate(&min_poly) {
        return Verdict { diagonalizable: true, char_poly, min_poly, witness: Witness::SeparableMinPoly };
    }
    exact_verdict_from_polys(char_poly, min_poly)
}

/// As [`verdict_from_polys`] but always through the exact gcd.
pub fn exact_verdict_from_polys(char_poly: XPoly, min_poly: XPoly) -> Verdict {
    let g = xpoly_gcd_over_fraction_field(&min_poly, &min_poly.derivative());
    let diagonalizable = g.degree() == Some(0);
    let witness = if diagonalizable { Witness::SeparableMinPoly } else { Witness::RepeatedOrInseparable { gcd: g } };
    Verdict { diagonalizable, char_poly, min_poly, witness }
}

pub fn verdict_matrix(m: &TMatrix) -> Verdict {
    verdict_from_polys(char_poly_matrix(m), min_poly_matrix(m))
}

pub fn diagonalizability_verdict(block: &UtBlock) -> Verdict {
    verdict_matrix(&block.matrix)
}

/// Checks `M v = λ v` exactly for every pair and, when there are as many
/// pairs as the dimension, that the eigenvectors form a basis of `F_p(t)^n`.
pub fn verify_eigenpairs_matrix(m: &TMatrix, pairs: &[EigenPair]) -> Result<bool> {
    let n = m.dim();
    for pair in pairs {
        if pair.eigenvector.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: pair.eigenvector.len() });
        }
        if pair.eigenvector.iter().all(TPoly::is_zero) {
            return Err(Error::ZeroEigenvector);
        }
    }
    let holds = pairs.iter().all(|pair| {
        let image = m.mul_vec(&pair.eigenvector);
        image.iter().zip(&pair.eigenvector).all(|(a, x)| *a == &pair.eigenvalue * x)
    });
    if !holds {
        return Ok(false);
    }
    if pairs.len() == n {
        let rows = pairs.iter().map(|pair| pair.eigenvector.clone()).collect();
        return Ok(rank_of_rows(rows, n) == n);
    }
    Ok(true)
}

pub fn verify_eigenpairs(block: &UtBlock, pairs: &[EigenPair]) -> Result<bool> {
    verify_eigenpairs_matrix(&block.matrix, pairs)
}

/// Verifies eigenpairs whose entries need `√t`: the block is pulled back
/// along `t -> s^2` and the pairs are given as polynomials in `s` (written in
/// the letter `t`).
pub fn verify_eigenpairs_over_sqrt_t(block: &UtBlock, pairs_in_s: &[EigenPair]) -> Result<bool> {
    verify_eigenpairs_matrix(&block.matrix.substitute_square(), pairs_in_s)
}
