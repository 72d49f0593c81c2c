//! The U_t matrix on the harmonic-cocycle basis `c_0, ..., c_{k-2}` of cusp
//! forms of weight `k` for `Γ1(t)`, split into residue classes mod `q - 1`.
//!
//! For a source index `j` the image `U_t(c_j)` has
//!
//! * on `c_j`: coefficient `(-1)^j C(k-2-j, j) t^{j+1}`,
//! * on `c_i`, `i = j + h(q-1)`, `h != 0`:
//!   `-[C(k-2-i, j-i) + (-1)^{j+1} C(k-2-i, j)] t^{j+1}`,
//!
//! and targets outside the index range are dropped. Only indices congruent
//! mod `q - 1` interact, so the matrix is block diagonal over the classes.

use serde::{Deserialize, Serialize};

use crate::arith::{binom_mod_p, sign_pow, FieldParams, FpElem};
use crate::error::{Error, Result};
use crate::matrix::TMatrix;
use crate::poly::TPoly;

/// Single cusp forms (basis `c_0..c_{k-2}`) or double cusp forms (`c_1..c_{k-3}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CuspidalMode {
    #[default]
    Single,
    Double,
}

impl CuspidalMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CuspidalMode::Single => "single",
            CuspidalMode::Double => "double",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightParams {
    pub field: FieldParams,
    pub k: u64,
    pub mode: CuspidalMode,
}

impl WeightParams {
    pub fn new(field: FieldParams, k: u64, mode: CuspidalMode) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidWeight(k));
        }
        Ok(WeightParams { field, k, mode })
    }

    /// Shorthand for `q` given as an integer.
    pub fn for_q(q: u64, k: u64, mode: CuspidalMode) -> Result<Self> {
        Self::new(FieldParams::from_q(q)?, k, mode)
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// Inclusive basis index range, `None` when the space is zero.
    pub fn index_range(&self) -> Option<(u64, u64)> {
        match self.mode {
            CuspidalMode::Single => Some((0, self.k - 2)),
            CuspidalMode::Double if self.k > 3 => Some((1, self.k - 3)),
            CuspidalMode::Double => None,
        }
    }

    /// Dimension of the cusp form space for `Γ1(t)`: `k-1`, resp. `k-3` (0 for `k <= 3`).
    pub fn dimension(&self) -> u64 {
        self.index_range().map_or(0, |(lo, hi)| hi - lo + 1)
    }

    /// Basis indices of the class `C_j` within the index range, ascending.
    pub fn class_indices(&self, j: u64) -> Vec<u64> {
        let step = self.q() - 1;
        let Some((lo, hi)) = self.index_range() else {
            return Vec::new();
        };
        (0..).map(|n| j + n * step).take_while(|&i| i <= hi).filter(|&i| i >= lo).collect()
    }
}

/// The restriction of U_t to the span of one residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtBlock {
    pub residue: u64,
    pub indices: Vec<u64>,
    pub matrix: TMatrix,
    pub gamma0_tagged: bool,
}

impl UtBlock {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn p(&self) -> u64 {
        self.matrix.p()
    }
}

/// Coefficient of `c_target` in `U_t(c_source)`; the entry is this times `t^{source+1}`.
pub fn ut_coefficient(params: &WeightParams, source: u64, target: u64) -> Result<FpElem> {
    let p = params.p();
    let k = params.k as i64;
    let (s, tg) = (source as i64, target as i64);
    if source == target {
        return Ok(sign_pow(source, p) * binom_mod_p(k - 2 - s, s, p)?);
    }
    if (s - tg) % (params.q() as i64 - 1) != 0 {
        return Ok(FpElem::zero(p));
    }
    let upper = k - 2 - tg;
    let sum = binom_mod_p(upper, s - tg, p)? + sign_pow(source + 1, p) * binom_mod_p(upper, s, p)?;
    Ok(-sum)
}

fn build_block(params: &WeightParams, residue: u64, indices: Vec<u64>) -> Result<UtBlock> {
    let p = params.p();
    let n = indices.len();
    let mut matrix = TMatrix::zeros(p, n);
    for (col, &source) in indices.iter().enumerate() {
        for (row, &target) in indices.iter().enumerate() {
            let c = ut_coefficient(params, source, target)?;
            matrix.set(row, col, TPoly::monomial(c, source as usize + 1));
        }
    }
    Ok(UtBlock { residue, indices, matrix, gamma0_tagged: false })
}

/// All nonempty residue-class blocks, ordered by residue. Tags are left unset.
pub fn build_ut_matrix(params: &WeightParams) -> Result<Vec<UtBlock>> {
    let q = params.q();
    let mut blocks = Vec::new();
    for residue in 0..q - 1 {
        let indices = params.class_indices(residue);
        if !indices.is_empty() {
            blocks.push(build_block(params, residue, indices)?);
        }
    }
    Ok(blocks)
}

/// The full `dim x dim` matrix on the basis in natural index order.
pub fn assemble(params: &WeightParams, blocks: &[UtBlock]) -> TMatrix {
    let mut m = TMatrix::zeros(params.p(), params.dimension() as usize);
    let lo = params.index_range().map_or(0, |r| r.0);
    for b in blocks {
        for (r, &ri) in b.indices.iter().enumerate() {
            for (c, &ci) in b.indices.iter().enumerate() {
                m.set((ri - lo) as usize, (ci - lo) as usize, b.matrix.get(r, c).clone());
            }
        }
    }
    m
}

/// Marks the classes holding `Γ0(t)`-invariant cusp forms: those containing
/// the index `(k-1-q)/2` and the index `(k-2)/2`, whenever these are integers
/// in range.
pub fn tag_gamma0_classes(params: &WeightParams, mut blocks: Vec<UtBlock>) -> Vec<UtBlock> {
    let k = params.k as i64;
    let q = params.q() as i64;
    let marked: Vec<u64> =
        [k - 1 - q, k - 2].into_iter().filter(|&v| v >= 0 && v % 2 == 0).map(|v| (v / 2) as u64).collect();
    for b in &mut blocks {
        b.gamma0_tagged = marked.iter().any(|i| b.indices.contains(i));
    }
    blocks
}

/// The scalars of a two-element class `C_j = {c_j, c_{j+q-1}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dim2Coefficients {
    pub j: u64,
    /// `C(k-2-j, j)`
    pub alpha: FpElem,
    /// `C(k-1-j-q, j)`
    pub beta: FpElem,
    /// `C(k-2-j, q-1) + (-1)^{j+1} C(k-2-j, j+q-1)`
    pub gamma: FpElem,
}

impl Dim2Coefficients {
    /// `α = 0` and `βγ != 0`: zero diagonal, both antidiagonal entries nonzero.
    pub fn is_antidiagonal(&self) -> bool {
        self.alpha.is_zero() && !self.beta.is_zero() && !self.gamma.is_zero()
    }
}

/// Closed form of a two-element block:
/// `[[(-1)^j α t^{j+1}, -γ t^{j+q}], [(-1)^j β t^{j+1}, 0]]`.
pub fn dim2_closed_form(params: &WeightParams, j: u64) -> Result<(Dim2Coefficients, UtBlock)> {
    let q = params.q();
    let p = params.p();
    let indices = if j < q - 1 { params.class_indices(j) } else { Vec::new() };
    if indices != [j, j + q - 1] {
        return Err(Error::ClassCardinality { j, size: indices.len() });
    }
    let k = params.k as i64;
    let (ji, qi) = (j as i64, q as i64);
    let coeffs = Dim2Coefficients {
        j,
        alpha: binom_mod_p(k - 2 - ji, ji, p)?,
        beta: binom_mod_p(k - 1 - ji - qi, ji, p)?,
        gamma: binom_mod_p(k - 2 - ji, qi - 1, p)? + sign_pow(j + 1, p) * binom_mod_p(k - 2 - ji, ji + qi - 1, p)?,
    };
    let sign = sign_pow(j, p);
    let e = j as usize + 1;
    let rows = vec![
        vec![TPoly::monomial(sign * coeffs.alpha, e), TPoly::monomial(-coeffs.gamma, (j + q) as usize)],
        vec![TPoly::monomial(sign * coeffs.beta, e), TPoly::zero(p)],
    ];
    let matrix = TMatrix::from_rows(p, rows)?;
    Ok((coeffs, UtBlock { residue: j, indices, matrix, gamma0_tagged: false }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u64, k: u64) -> WeightParams {
        WeightParams::for_q(q, k, CuspidalMode::Single).unwrap()
    }

    fn block(q: u64, k: u64, j: u64) -> UtBlock {
        build_ut_matrix(&params(q, k)).unwrap().into_iter().find(|b| b.residue == j).unwrap()
    }

    #[test]
    fn rejects_small_weight() {
        let f = FieldParams::from_q(3).unwrap();
        assert_eq!(WeightParams::new(f, 1, CuspidalMode::Single), Err(Error::InvalidWeight(1)));
    }

    #[test]
    fn k_equals_q_plus_one() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let b = block(q, q + 1, 0);
            assert_eq!(b.indices, vec![0, q - 1]);
            let p = b.p();
            let t = TPoly::t(p);
            assert_eq!(b.matrix.get(0, 0), &t);
            assert_eq!(b.matrix.get(1, 0), &t);
            // -t^q (1 + (-1)^q) vanishes in F_p
            assert!(b.matrix.get(0, 1).is_zero());
            assert!(b.matrix.get(1, 1).is_zero());
        }
    }

    #[test]
    fn q25_k33_m1() {
        let b = block(25, 33, 1);
        assert_eq!(b.indices, vec![1, 25]);
        assert_eq!(b.matrix.format(), "[[0, -t^26], [-t^2, 0]]");
    }

    #[test]
    fn q2_k5_matrix() {
        let blocks = build_ut_matrix(&params(2, 5)).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].matrix.format(), "[[t, 0, 0, 0], [t, 0, t^3, t^4], [t, t^2, 0, t^4], [t, 0, 0, 0]]");
    }

    #[test]
    fn q16_k29_zero_block() {
        let b = block(16, 29, 3);
        assert_eq!(b.indices, vec![3, 18]);
        assert!(b.matrix.is_zero());
    }

    #[test]
    fn closed_form_examples() {
        let (_, b) = dim2_closed_form(&params(25, 33), 3).unwrap();
        assert_eq!(b.matrix.format(), "[[-t^4, 2*t^28], [t^4, 0]]");
        let (_, b) = dim2_closed_form(&params(16, 30), 1).unwrap();
        assert_eq!(b.matrix.format(), "[[t^2, t^17], [0, 0]]");
        for (q, k) in [(5u64, 9u64), (7, 11), (9, 14), (25, 40), (16, 30)] {
            let (c, _) = dim2_closed_form(&params(q, k), 0).unwrap();
            assert!(c.alpha.is_one() && c.beta.is_one() && c.gamma.is_zero(), "q={q} k={k}");
        }
        assert_eq!(dim2_closed_form(&params(5, 5), 0).unwrap_err(), Error::ClassCardinality { j: 0, size: 1 });
        assert!(dim2_closed_form(&params(5, 12), 0).is_err());
        assert!(dim2_closed_form(&params(5, 12), 7).is_err());
    }

    #[test]
    fn gamma0_tags() {
        let tagged = |q, k| -> Vec<u64> {
            let p = params(q, k);
            tag_gamma0_classes(&p, build_ut_matrix(&p).unwrap())
                .into_iter()
                .filter(|b| b.gamma0_tagged)
                .map(|b| b.residue)
                .collect()
        };
        // (29-2)/2 is not an integer
        assert_eq!(tagged(16, 29), vec![6]);
        assert_eq!(tagged(3, 8), vec![0, 1]);
        assert_eq!(tagged(4, 8), vec![0]);
        // k - 1 - q = 3 is odd; (k-2)/2 = 3 lies in C_0 for q = 4
        assert_eq!(params(4, 8).class_indices(0), vec![0, 3, 6]);
    }

    #[test]
    fn double_mode() {
        let p = WeightParams::for_q(2, 5, CuspidalMode::Double).unwrap();
        let blocks = build_ut_matrix(&p).unwrap();
        assert_eq!(blocks[0].matrix.format(), "[[0, t^3], [t^2, 0]]");
        for k in [2, 3] {
            let p = WeightParams::for_q(5, k, CuspidalMode::Double).unwrap();
            assert!(build_ut_matrix(&p).unwrap().is_empty());
            assert_eq!(p.dimension(), 0);
        }
    }
}
