//! Dense square matrices over `F_p[t]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::TPoly;

/// Square matrix with `TPoly` entries, row-major. Column `c` holds the image
/// of the `c`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TMatrix {
    p: u64,
    n: usize,
    data: Vec<TPoly>,
}

impl TMatrix {
    pub fn zeros(p: u64, n: usize) -> Self {
        TMatrix { p, n, data: vec![TPoly::zero(p); n * n] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n);
        for i in 0..n {
            m.set(i, i, TPoly::one(p));
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<TPoly>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if let Some(bad) = row.iter().find(|e| e.p() != p) {
                return Err(Error::ModulusMismatch(p, bad.p()));
            }
            data.extend(row);
        }
        Ok(TMatrix { p, n, data })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &TPoly {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: TPoly) {
        debug_assert_eq!(value.p(), self.p);
        self.data[row * self.n + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<TPoly>> {
        self.data.chunks(self.n.max(1)).map(<[TPoly]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(TPoly::is_zero)
    }

    pub fn mul_vec(&self, v: &[TPoly]) -> Vec<TPoly> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                let mut acc = TPoly::zero(self.p);
                for (c, x) in v.iter().enumerate() {
                    acc.add_mul_assign(self.get(r, c), x);
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &TMatrix) -> TMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = TMatrix::zeros(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TMatrix) -> TMatrix {
        assert_eq!(self.n, other.n);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        TMatrix { p: self.p, n: self.n, data }
    }

    pub fn scale(&self, c: &TPoly) -> TMatrix {
        TMatrix { p: self.p, n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// The matrix in the reordered basis `e_{perm[0]}, e_{perm[1]}, ...`,
    /// i.e. `P^{-1} M P` for the permutation matrix `P`.
    pub fn permuted(&self, perm: &[usize]) -> TMatrix {
        assert_eq!(perm.len(), self.n);
        let mut out = TMatrix::zeros(self.p, self.n);
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                out.set(i, j, self.get(pi, pj).clone());
            }
        }
        out
    }

    pub fn substitute_square(&self) -> TMatrix {
        TMatrix { p: self.p, n: self.n, data: self.data.iter().map(TPoly::substitute_square).collect() }
    }

    /// Rank over `F_p(t)` by fraction-free elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows(), self.n)
    }

    /// Canonical rendering `[[a, b], [c, d]]`.
    pub fn format(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Reads the canonical rendering back.
    pub fn parse(s: &str, p: u64) -> Result<TMatrix> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("matrix must be bracketed: {s}")))?
            .trim();
        if inner.is_empty() {
            return Ok(TMatrix::zeros(p, 0));
        }
        let mut rows = Vec::new();
        let mut rest = inner;
        loop {
            let body = rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("expected '[' in {s}")))?;
            let close = body.find(']').ok_or_else(|| Error::Parse(format!("unclosed row in {s}")))?;
            let row = body[..close].split(',').map(|e| TPoly::parse(e.trim(), p)).collect::<Result<Vec<_>>>()?;
            rows.push(row);
            rest = body[close + 1..].trim_start();
            match rest.strip_prefix(',') {
                Some(r) => rest = r.trim_start(),
                None if rest.is_empty() => break,
                None => return Err(Error::Parse(format!("unexpected {rest:?} in {s}"))),
            }
        }
        TMatrix::from_rows(p, rows)
    }
}

impl fmt::Display for TMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Rank over `F_p(t)` of a list of row vectors of the given width.
pub(crate) fn rank_of_rows(mut rows: Vec<Vec<TPoly>>, width: usize) -> usize {
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        let a = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let b = row[col].clone();
            if b.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &(&a * x) - &(&b * y);
            }
            let content = row.iter().fold(TPoly::zero(a.p()), |g, c| g.gcd(c));
            if !content.is_zero() && !content.is_one() {
                for x in row.iter_mut() {
                    *x = x.exact_div(&content).unwrap();
                }
            }
        }
        rank += 1;
    }
    rank
}
