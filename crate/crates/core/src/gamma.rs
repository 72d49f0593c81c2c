//! U_t on cusp forms for the full level-`t` group `Γ(t)`.
//!
//! The basis `c_{j,r}` (`r` in `F_q`) splits as the `r = 0` vectors, on which
//! U_t acts by the `Γ1(t)` matrix `A`, followed by the `r != 0` vectors, all
//! of which lie in the kernel. The matrix is therefore `[[A, 0], [0, 0]]`.
//! The zero part is kept implicit.

use crate::error::Result;
use crate::hecke::{assemble, build_ut_matrix, tag_gamma0_classes, CuspidalMode, UtBlock, WeightParams};
use crate::matrix::TMatrix;
use crate::poly::{TPoly, XPoly};
use crate::spectral::{char_poly_matrix, diagonalizability_verdict, min_poly_matrix, verdict_from_polys, Verdict};

/// Label of a basis vector `c_{j,r}`; `r` indexes `F_q` with `0` the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaBasisLabel {
    pub j: u64,
    pub r: u64,
}

#[derive(Debug, Clone)]
pub struct GammaMatrix {
    pub params: WeightParams,
    pub full_dim: u64,
    /// The `Γ1(t)` blocks making up the corner `A`.
    pub blocks: Vec<UtBlock>,
    /// `A` on `c_{lo,0}, ..., c_{hi,0}`.
    pub corner: TMatrix,
    pub kernel_dim: u64,
}

/// `q(k-1)` for cusp forms, `q(k-2)-1` for double cusp forms (0 when `k = 2`).
pub fn gamma_dimension(params: &WeightParams) -> u64 {
    let q = params.q();
    let k = params.k;
    match params.mode {
        CuspidalMode::Single => q * (k - 1),
        CuspidalMode::Double if k == 2 => 0,
        CuspidalMode::Double => q * (k - 2) - 1,
    }
}

pub fn build_gamma_matrix(params: &WeightParams) -> Result<GammaMatrix> {
    let blocks = tag_gamma0_classes(params, build_ut_matrix(params)?);
    let corner = assemble(params, &blocks);
    let full_dim = gamma_dimension(params);
    let kernel_dim = full_dim - corner.rank() as u64;
    Ok(GammaMatrix { params: *params, full_dim, blocks, corner, kernel_dim })
}

impl GammaMatrix {
    pub fn corner_dim(&self) -> u64 {
        self.corner.dim() as u64
    }

    /// Number of basis vectors `c_{j,r}` with `r != 0`.
    pub fn complement_dim(&self) -> u64 {
        self.full_dim - self.corner_dim()
    }

    /// Basis in matrix order: `c_{j,0}` ascending in `j`, then `r != 0`
    /// lexicographically by `(r, j)`.
    pub fn basis(&self) -> Vec<GammaBasisLabel> {
        let q = self.params.q();
        let k = self.params.k;
        let (lo, hi, j_max) = match self.params.index_range() {
            Some((lo, hi)) => (lo, hi, if self.params.mode == CuspidalMode::Single { k - 2 } else { k - 3 }),
            None if k == 2 => return Vec::new(),
            // double cusp forms, k = 3: only c_{0,r}, r != 0
            None => (1, 0, 0),
        };
        let mut out: Vec<GammaBasisLabel> = (lo..=hi).map(|j| GammaBasisLabel { j, r: 0 }).collect();
        for r in 1..q {
            out.extend((0..=j_max).map(|j| GammaBasisLabel { j, r }));
        }
        debug_assert_eq!(out.len() as u64, self.full_dim);
        out
    }

    /// Entry of the full matrix; zero outside the corner.
    pub fn entry(&self, row: u64, col: u64) -> TPoly {
        let n = self.corner_dim();
        if row < n && col < n {
            self.corner.get(row as usize, col as usize).clone()
        } else {
            TPoly::zero(self.params.p())
        }
    }

    pub fn rank(&self) -> u64 {
        self.full_dim - self.kernel_dim
    }

    /// `det(X I - M)` of the full matrix.
    pub fn char_poly(&self) -> XPoly {
        let p = self.params.p();
        &char_poly_matrix(&self.corner) * &XPoly::monomial(TPoly::one(p), self.complement_dim() as usize)
    }

    /// Verdict for the full matrix, computed on the assembled corner and the
    /// zero complement without using the class decomposition.
    pub fn verdict(&self) -> Verdict {
        let p = self.params.p();
        let mut min_poly = min_poly_matrix(&self.corner);
        if self.complement_dim() > 0 {
            min_poly = min_poly.lcm(&XPoly::x(p));
        }
        verdict_from_polys(self.char_poly(), min_poly)
    }
}

/// Checks that U_t on `Γ(t)` cusp forms is diagonalizable exactly when it is
/// on `Γ1(t)` cusp forms. `false` means an implementation bug.
pub fn gamma_equivalence_check(params: &WeightParams) -> Result<bool> {
    let gm = build_gamma_matrix(params)?;
    let gamma1 = gm.blocks.iter().all(|b| diagonalizability_verdict(b).diagonalizable);
    Ok(gm.verdict().diagonalizable == gamma1)
}
