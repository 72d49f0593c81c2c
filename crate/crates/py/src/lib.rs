//! Python bindings: blocks, verdicts, binomials, closed forms and the
//! verification suites.

use drinfeld_ut::report::{self, Level};
use drinfeld_ut::spectral::verdict_matrix;
use drinfeld_ut::verify::{run_theorem as run_suite, TheoremId};
use drinfeld_ut::{build_ut_matrix, tag_gamma0_classes, CuspidalMode, Error, TMatrix, UtBlock, Verdict, WeightParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<CuspidalMode> {
    match mode {
        "single" => Ok(CuspidalMode::Single),
        "double" => Ok(CuspidalMode::Double),
        other => Err(PyValueError::new_err(format!("mode must be 'single' or 'double' (got {other:?})"))),
    }
}

fn parse_level(level: &str) -> PyResult<Level> {
    match level {
        "gamma1" => Ok(Level::Gamma1),
        "gamma" => Ok(Level::Gamma),
        other => Err(PyValueError::new_err(format!("level must be 'gamma1' or 'gamma' (got {other:?})"))),
    }
}

fn params(q: u64, k: u64, mode: &str) -> PyResult<WeightParams> {
    WeightParams::for_q(q, k, parse_mode(mode)?).map_err(py_err)
}

/// Diagonalizability verdict with its polynomials as canonical strings.
#[pyclass(name = "Verdict", frozen, get_all)]
struct PyVerdict {
    diagonalizable: bool,
    char_poly: String,
    min_poly: String,
    witness: String,
}

impl From<Verdict> for PyVerdict {
    fn from(v: Verdict) -> Self {
        PyVerdict {
            diagonalizable: v.diagonalizable,
            char_poly: v.char_poly.to_string(),
            min_poly: v.min_poly.to_string(),
            witness: v.witness.describe(),
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!("Verdict(diagonalizable={}, min_poly='{}')", self.diagonalizable, self.min_poly)
    }
}

/// One residue-class block of U_t.
#[pyclass(name = "Block", frozen)]
struct PyBlock {
    inner: UtBlock,
}

#[pymethods]
impl PyBlock {
    #[getter]
    fn residue(&self) -> u64 {
        self.inner.residue
    }

    #[getter]
    fn indices(&self) -> Vec<u64> {
        self.inner.indices.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn gamma0_tagged(&self) -> bool {
        self.inner.gamma0_tagged
    }

    /// Entries as canonical polynomial strings, row-major.
    fn entries(&self) -> Vec<Vec<String>> {
        self.inner.matrix.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    fn matrix(&self) -> String {
        self.inner.matrix.format()
    }

    fn char_poly(&self) -> String {
        drinfeld_ut::char_poly(&self.inner).to_string()
    }

    fn min_poly(&self) -> String {
        drinfeld_ut::min_poly(&self.inner).to_string()
    }

    fn verdict(&self) -> PyVerdict {
        drinfeld_ut::diagonalizability_verdict(&self.inner).into()
    }

    fn __repr__(&self) -> String {
        format!("Block(M_{} = {})", self.inner.residue, self.inner.matrix.format())
    }
}

/// All blocks for `(q, k)`, ordered by residue.
#[pyfunction]
#[pyo3(signature = (q, k, mode = "single"))]
fn blocks(q: u64, k: u64, mode: &str) -> PyResult<Vec<PyBlock>> {
    let p = params(q, k, mode)?;
    let bs = build_ut_matrix(&p).map_err(py_err)?;
    Ok(tag_gamma0_classes(&p, bs).into_iter().map(|inner| PyBlock { inner }).collect())
}

/// Verdict for an arbitrary square matrix given as `[[a, b], [c, d]]` over `F_p[t]`.
#[pyfunction]
fn verdict(matrix: &str, p: u64) -> PyResult<PyVerdict> {
    let m = TMatrix::parse(matrix, p).map_err(py_err)?;
    Ok(verdict_matrix(&m).into())
}

#[pyfunction]
fn binom_mod_p(n: i64, m: i64, p: u64) -> PyResult<u64> {
    drinfeld_ut::binom_mod_p(n, m, p).map(|c| c.value()).map_err(py_err)
}

/// `(alpha, beta, gamma, antidiagonal, matrix)` for a two-element class.
#[pyfunction]
fn dim2_closed_form(q: u64, k: u64, j: u64) -> PyResult<(u64, u64, u64, bool, String)> {
    let p = params(q, k, "single")?;
    let (c, block) = drinfeld_ut::dim2_closed_form(&p, j).map_err(py_err)?;
    Ok((c.alpha.value(), c.beta.value(), c.gamma.value(), c.is_antidiagonal(), block.matrix.format()))
}

#[pyfunction]
#[pyo3(signature = (q, k, mode = "single"))]
fn gamma_equivalence_check(q: u64, k: u64, mode: &str) -> PyResult<bool> {
    drinfeld_ut::gamma_equivalence_check(&params(q, k, mode)?).map_err(py_err)
}

/// Block reports as a JSON array.
#[pyfunction]
#[pyo3(signature = (q, k, mode = "single", level = "gamma1"))]
fn report_json(q: u64, k: u64, mode: &str, level: &str) -> PyResult<String> {
    let reports = report::block_reports(&params(q, k, mode)?, parse_level(level)?).map_err(py_err)?;
    Ok(report::render_json(&reports))
}

/// Runs one verification suite; returns `(passed, summary)`.
#[pyfunction]
#[pyo3(signature = (theorem, q_list = None, k_bound = None))]
fn run_theorem(theorem: &str, q_list: Option<Vec<u64>>, k_bound: Option<u64>) -> PyResult<(bool, String)> {
    let id: TheoremId = theorem.parse().map_err(py_err)?;
    let r = run_suite(id, q_list.as_deref(), k_bound).map_err(py_err)?;
    Ok((r.passed, r.to_string()))
}

#[pymodule]
fn drinfeld_ut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBlock>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(blocks, m)?)?;
    m.add_function(wrap_pyfunction!(verdict, m)?)?;
    m.add_function(wrap_pyfunction!(binom_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(dim2_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_equivalence_check, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_theorem, m)?)?;
    Ok(())
}
