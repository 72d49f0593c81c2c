//! Exact matrices of the Atkin U_t operator on Drinfeld cusp forms of level
//! `t` for `Γ1(t)` and `Γ(t)`, their characteristic and minimal polynomials
//! over `F_p[t]`, and certificates of diagonalizability over an algebraic
//! closure of `F_p(t)`.

pub mod arith;
pub mod error;
pub mod fixtures;
pub mod gamma;
pub mod hecke;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod spectral;
pub mod verify;

pub use arith::{binom_mod_p, sign_pow, FieldParams, FpElem};
pub use error::{Error, Result};
pub use gamma::{build_gamma_matrix, gamma_dimension, gamma_equivalence_check, GammaMatrix};
pub use hecke::{
    build_ut_matrix, dim2_closed_form, tag_gamma0_classes, CuspidalMode, Dim2Coefficients, UtBlock, WeightParams,
};
pub use matrix::TMatrix;
pub use poly::{is_separable_squarefree, xpoly_gcd_over_fraction_field, RatFun, TPoly, TermOrder, XPoly};
pub use report::{block_reports, scan_reports, BlockReport, Format, Level};
pub use spectral::{
    char_poly, char_poly_oracle, diagonalizability_verdict, min_poly, verify_eigenpairs, EigenPair, Verdict, Witness,
};
pub use verify::{run_theorem, Counterexample, TheoremCheckResult, TheoremId};
