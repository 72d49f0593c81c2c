//! Machine checks of the diagonalizability results, one suite per theorem id.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{build_gamma_matrix, gamma_dimension, gamma_equivalence_check};
use crate::hecke::{build_ut_matrix, dim2_closed_form, CuspidalMode, UtBlock, WeightParams};
use crate::poly::{TPoly, XPoly};
use crate::spectral::{char_poly, diagonalizability_verdict, verify_eigenpairs, EigenPair, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    /// Small weights `k <= q+2`.
    #[serde(rename = "T3.1")]
    SmallWeight,
    /// `k = q+3`: diagonalizable iff `q` odd.
    #[serde(rename = "T3.2")]
    FirstObstruction,
    /// Two-element classes in odd characteristic.
    #[serde(rename = "T4.3")]
    OddDim2,
    /// `k = 2q`, with explicit eigenvectors on `C_0`.
    #[serde(rename = "T4.5")]
    DoubleQ,
    /// Two-element classes in characteristic 2.
    #[serde(rename = "S4.2")]
    EvenDim2,
    /// `Γ(t)` versus `Γ1(t)`.
    #[serde(rename = "T5.1")]
    FullLevel,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::SmallWeight,
        TheoremId::FirstObstruction,
        TheoremId::OddDim2,
        TheoremId::DoubleQ,
        TheoremId::EvenDim2,
        TheoremId::FullLevel,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::SmallWeight => "T3.1",
            TheoremId::FirstObstruction => "T3.2",
            TheoremId::OddDim2 => "T4.3",
            TheoremId::DoubleQ => "T4.5",
            TheoremId::EvenDim2 => "S4.2",
            TheoremId::FullLevel => "T5.1",
        }
    }

    pub fn default_q_list(&self) -> Vec<u64> {
        match self {
            TheoremId::SmallWeight | TheoremId::FirstObstruction => vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25],
            TheoremId::OddDim2 => vec![3, 5, 7, 9, 25],
            TheoremId::DoubleQ => vec![3, 4, 5, 7, 8, 9],
            TheoremId::EvenDim2 => vec![2, 4, 8, 16],
            TheoremId::FullLevel => vec![2, 3, 4, 5],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL.into_iter().find(|t| t.as_str().eq_ignore_ascii_case(s.trim())).ok_or_else(|| {
            Error::Parse(format!("unknown theorem id {s:?} (expected T3.1, T3.2, T4.3, T4.5, S4.2 or T5.1)"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: u64,
    pub k: u64,
    pub mode: CuspidalMode,
    /// Residue of the offending block, if the failure is tied to one.
    pub j: Option<u64>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}, k = {}, mode = {}", self.q, self.k, self.mode.as_str())?;
        if let Some(j) = self.j {
            write!(f, ", j = {j}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheckResult {
    pub theorem: TheoremId,
    pub q_list: Vec<u64>,
    pub k_bound: Option<u64>,
    pub passed: bool,
    /// Number of `(q, k, j)` cells examined.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for TheoremCheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.q_list.iter().map(u64::to_string).collect();
        write!(
            f,
            "{} {} (q in {{{}}}, {} cells)",
            self.theorem,
            if self.passed { "PASS" } else { "FAIL" },
            qs.join(","),
            self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

type Cell = std::result::Result<usize, Counterexample>;

fn cex(params: &WeightParams, j: Option<u64>, detail: impl Into<String>) -> Counterexample {
    Counterexample { q: params.q(), k: params.k, mode: params.mode, j, detail: detail.into() }
}

fn blocks_for(params: &WeightParams) -> std::result::Result<Vec<UtBlock>, Counterexample> {
    build_ut_matrix(params).map_err(|e| cex(params, None, e.to_string()))
}

fn single(q: u64, k: u64) -> Result<WeightParams> {
    WeightParams::for_q(q, k, CuspidalMode::Single)
}

fn cap(default: u64, k_bound: Option<u64>) -> u64 {
    k_bound.map_or(default, |b| b.min(default))
}

/// Every block diagonalizable for `2 <= k <= q+2`.
fn check_small_weight(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    all_diagonalizable(q, 2, cap(q + 2, k_bound))
}

fn all_diagonalizable(q: u64, k_min: u64, k_max: u64) -> Result<Cell> {
    let mut checked = 0;
    for k in k_min..=k_max {
        let params = single(q, k)?;
        for b in match blocks_for(&params) {
            Ok(b) => b,
            Err(c) => return Ok(Err(c)),
        } {
            let v = diagonalizability_verdict(&b);
            checked += 1;
            if !v.diagonalizable {
                return Ok(Err(cex(&params, Some(b.residue), v.witness.describe())));
            }
        }
    }
    Ok(Ok(checked))
}

/// `k = q+3`: all blocks diagonalizable for odd `q`; for even `q` exactly one
/// failing block, `M_1` (or the single 4x4 block when `q = 2`), with a
/// nonconstant gcd witness.
fn check_first_obstruction(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    let k = q + 3;
    if k_bound.is_some_and(|b| b < k) {
        return Ok(Ok(0));
    }
    let params = single(q, k)?;
    let blocks = match blocks_for(&params) {
        Ok(b) => b,
        Err(c) => return Ok(Err(c)),
    };
    let failing: Vec<(u64, usize, Witness)> = blocks
        .iter()
        .filter_map(|b| {
            let v = diagonalizability_verdict(b);
            (!v.diagonalizable).then_some((b.residue, b.dim(), v.witness))
        })
        .collect();
    let odd = q % 2 == 1;
    if odd {
        if let Some((j, _, w)) = failing.first() {
            return Ok(Err(cex(&params, Some(*j), format!("odd q but not diagonalizable: {}", w.describe()))));
        }
        return Ok(Ok(blocks.len()));
    }
    let expected = if q == 2 { (0, 4) } else { (1, 2) };
    match failing.as_slice() {
        [(j, dim, Witness::RepeatedOrInseparable { gcd })] if (*j, *dim) == expected && gcd.degree() > Some(0) => {
            Ok(Ok(blocks.len()))
        }
        [] => Ok(Err(cex(&params, None, "even q but every block diagonalizable"))),
        _ => {
            let desc: Vec<String> =
                failing.iter().map(|(j, d, w)| format!("M_{j} (dim {d}): {}", w.describe())).collect();
            Ok(Err(cex(&params, Some(failing[0].0), format!("unexpected failing blocks: {}", desc.join("; ")))))
        }
    }
}

fn two_element_classes(params: &WeightParams) -> Vec<u64> {
    (0..params.q() - 1).filter(|&j| params.class_indices(j).len() == 2).collect()
}

/// Two-element classes with `q+3 < k`, odd `q`: closed form equals the
/// generic block, the block is diagonalizable, and the criterion
/// `α != 0 or βγ != 0 or M_j = 0` holds.
fn check_odd_dim2(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    if q.is_multiple_of(2) {
        return Err(Error::Parse(format!("T4.3 needs odd q (got {q})")));
    }
    let mut checked = 0;
    // |C_j| = 2 forces k <= j + 2q - 1 <= 3q - 3
    for k in (q + 4)..=cap(3 * q - 3, k_bound) {
        let params = single(q, k)?;
        let blocks = match blocks_for(&params) {
            Ok(b) => b,
            Err(c) => return Ok(Err(c)),
        };
        for j in two_element_classes(&params) {
            let (coeffs, closed) = dim2_closed_form(&params, j)?;
            let generic = blocks.iter().find(|b| b.residue == j).expect("class present");
            checked += 1;
            if closed.matrix != generic.matrix {
                return Ok(Err(cex(
                    &params,
                    Some(j),
                    format!("closed form {} != generic {}", closed.matrix.format(), generic.matrix.format()),
                )));
            }
            let v = diagonalizability_verdict(generic);
            let criterion = !coeffs.alpha.is_zero()
                || (!coeffs.beta.is_zero() && !coeffs.gamma.is_zero())
                || generic.matrix.is_zero();
            if !v.diagonalizable || !criterion {
                return Ok(Err(cex(
                    &params,
                    Some(j),
                    format!(
                        "diagonalizable = {}, criterion = {} (alpha = {}, beta = {}, gamma = {}); {}",
                        v.diagonalizable,
                        criterion,
                        coeffs.alpha,
                        coeffs.beta,
                        coeffs.gamma,
                        v.witness.describe()
                    ),
                )));
            }
        }
    }
    Ok(Ok(checked))
}

/// Two-element classes in characteristic 2: a block fails exactly when it is
/// antidiagonal with nonzero antidiagonal, and never for even `k`.
fn check_even_dim2(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    if q % 2 == 1 {
        return Err(Error::Parse(format!("S4.2 needs even q (got {q})")));
    }
    let mut checked = 0;
    for k in (q + 1)..=cap(3 * q - 3, k_bound) {
        let params = single(q, k)?;
        let blocks = match blocks_for(&params) {
            Ok(b) => b,
            Err(c) => return Ok(Err(c)),
        };
        for j in two_element_classes(&params) {
            let (coeffs, closed) = dim2_closed_form(&params, j)?;
            let generic = blocks.iter().find(|b| b.residue == j).expect("class present");
            checked += 1;
            if closed.matrix != generic.matrix {
                return Ok(Err(cex(&params, Some(j), "closed form differs from generic block")));
            }
            let v = diagonalizability_verdict(generic);
            let anti = coeffs.is_antidiagonal();
            if v.diagonalizable == anti {
                return Ok(Err(cex(
                    &params,
                    Some(j),
                    format!("diagonalizable = {}, antidiagonal = {anti}; {}", v.diagonalizable, v.witness.describe()),
                )));
            }
            if anti && k % 2 == 0 {
                return Ok(Err(cex(&params, Some(j), "antidiagonal block at even k")));
            }
        }
    }
    Ok(Ok(checked))
}

/// The three eigenpairs on `C_0 = {c_0, c_{q-1}, c_{2q-2}}` at `k = 2q`.
pub fn double_q_eigenpairs(q: u64, p: u64) -> Vec<EigenPair> {
    let tp = |e: usize| TPoly::monomial(crate::arith::FpElem::one(p), e);
    let one = TPoly::one(p);
    let zero = TPoly::zero(p);
    let qm1 = (q - 1) as usize;
    vec![
        EigenPair::new(tp(q as usize), vec![zero.clone(), one.clone(), zero.clone()]),
        EigenPair::new(tp(1), vec![one.clone(), &one + &tp(qm1), one.clone()]),
        EigenPair::new(zero.clone(), vec![zero, tp(qm1), one]),
    ]
}

/// `k = 2q`: every block diagonalizable and the `C_0` eigenpairs hold.
fn check_double_q(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    let k = 2 * q;
    if k_bound.is_some_and(|b| b < k) || q < 3 {
        return Ok(Ok(0));
    }
    let params = single(q, k)?;
    let blocks = match blocks_for(&params) {
        Ok(b) => b,
        Err(c) => return Ok(Err(c)),
    };
    for b in &blocks {
        let v = diagonalizability_verdict(b);
        if !v.diagonalizable {
            return Ok(Err(cex(&params, Some(b.residue), v.witness.describe())));
        }
    }
    let c0 = &blocks[0];
    if c0.indices != [0, q - 1, 2 * q - 2] {
        return Ok(Err(cex(&params, Some(0), format!("C_0 has indices {:?}", c0.indices))));
    }
    if !verify_eigenpairs(c0, &double_q_eigenpairs(q, params.p()))? {
        return Ok(Err(cex(&params, Some(0), format!("eigenpairs fail on {}", c0.matrix.format()))));
    }
    Ok(Ok(blocks.len()))
}

/// `Γ(t)` against `Γ1(t)`, both modes: equal verdicts, the full char poly is
/// the product of block char polys times a power of `X`, and the dimension
/// formulas hold.
fn check_full_level(q: u64, k_bound: Option<u64>) -> Result<Cell> {
    let mut checked = 0;
    let k_max = k_bound.unwrap_or(2 * q + 2);
    for mode in [CuspidalMode::Single, CuspidalMode::Double] {
        for k in 2..=k_max {
            let params = WeightParams::for_q(q, k, mode)?;
            checked += 1;
            let expected_dim = match mode {
                CuspidalMode::Single => q * (k - 1),
                CuspidalMode::Double if k == 2 => 0,
                CuspidalMode::Double => q * (k - 2) - 1,
            };
            let gm = build_gamma_matrix(&params)?;
            if gamma_dimension(&params) != expected_dim || gm.basis().len() as u64 != expected_dim {
                return Ok(Err(cex(
                    &params,
                    None,
                    format!("dimension {} / basis {} != {expected_dim}", gm.full_dim, gm.basis().len()),
                )));
            }
            if !gamma_equivalence_check(&params)? {
                return Ok(Err(cex(&params, None, "Γ(t) and Γ1(t) verdicts differ")));
            }
            let p = params.p();
            let product = gm.blocks.iter().fold(XPoly::one(p), |acc, b| &acc * &char_poly(b));
            let complement = expected_dim - params.dimension();
            let expected = &product * &XPoly::monomial(TPoly::one(p), complement as usize);
            let full = gm.char_poly();
            if full != expected {
                return Ok(Err(cex(&params, None, format!("char poly {full} != {expected}"))));
            }
        }
    }
    Ok(Ok(checked))
}

/// Runs one suite over `q_list` (or the theorem's default list). `k_bound`
/// caps the weights examined; for T5.1 it replaces the default `2q+2`.
pub fn run_theorem(theorem: TheoremId, q_list: Option<&[u64]>, k_bound: Option<u64>) -> Result<TheoremCheckResult> {
    let q_list: Vec<u64> = q_list.map_or_else(|| theorem.default_q_list(), <[u64]>::to_vec);
    let check = match theorem {
        TheoremId::SmallWeight => check_small_weight,
        TheoremId::FirstObstruction => check_first_obstruction,
        TheoremId::OddDim2 => check_odd_dim2,
        TheoremId::DoubleQ => check_double_q,
        TheoremId::EvenDim2 => check_even_dim2,
        TheoremId::FullLevel => check_full_level,
    };
    let cells: Vec<Result<Cell>> = q_list.par_iter().map(|&q| check(q, k_bound)).collect();
    let mut checked = 0;
    let mut counterexample = None;
    for cell in cells {
        match cell? {
            Ok(n) => checked += n,
            Err(c) => {
                counterexample.get_or_insert(c);
            }
        }
    }
    Ok(TheoremCheckResult { theorem, q_list, k_bound, passed: counterexample.is_none(), checked, counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
        assert_eq!(serde_json::to_string(&TheoremId::EvenDim2).unwrap(), "\"S4.2\"");
    }

    #[test]
    fn small_suites_pass() {
        let r = run_theorem(TheoremId::SmallWeight, Some(&[2, 3, 4, 5]), None).unwrap();
        assert!(r.passed, "{r}");
        let r = run_theorem(TheoremId::FirstObstruction, Some(&[2, 3, 4, 5, 8, 9]), None).unwrap();
        assert!(r.passed, "{r}");
        let r = run_theorem(TheoremId::FullLevel, Some(&[2, 3]), Some(7)).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn failure_carries_counterexample() {
        // one step past the small-weight range hits the even-q obstruction
        let c = all_diagonalizable(4, 2, 7).unwrap().unwrap_err();
        assert_eq!((c.q, c.k, c.j), (4, 7, Some(1)));
        assert!(c.detail.contains("gcd = "), "{c}");
        assert!(all_diagonalizable(4, 2, 6).unwrap().is_ok());
        assert!(run_theorem(TheoremId::OddDim2, Some(&[4]), None).is_err());
    }
}
