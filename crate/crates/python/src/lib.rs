//! Python bindings: cyclotomic fields, their elements, root-of-unity matrices and the verifiers.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rootdet::identities::OracleOpts;
use rootdet::numbers::{parse_rational, Rational};
use rootdet::{suite, CMatrix, CycloContext, CycloElem, MatrixKind};

fn err(e: rootdet::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Q(ζ_n).
#[pyclass(name = "Field", module = "rootdet", frozen)]
struct PyField {
    ctx: Arc<CycloContext>,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(PyField {
            ctx: CycloContext::new(n).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.ctx.degree()
    }

    /// Integer coefficients of the defining cyclotomic polynomial, lowest degree first.
    fn phi(&self) -> Vec<BigInt> {
        self.ctx.phi().to_vec()
    }

    /// ζ^e.
    fn zeta(&self, e: i64) -> PyElem {
        PyElem(CycloElem::zeta_pow(&self.ctx, e))
    }

    /// Embeds an int or a rational given as "p/q".
    fn element(&self, value: &Bound<'_, PyAny>) -> PyResult<PyElem> {
        Ok(PyElem(CycloElem::from_rational(&self.ctx, &to_rational(value)?)))
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.ctx.n())
    }
}

fn to_rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = value.extract::<BigInt>() {
        return Ok(Rational::from_integer(i));
    }
    let s: String = value.str()?.extract()?;
    parse_rational(&s).map_err(err)
}

/// Element of Q(ζ_n).
#[pyclass(name = "Elem", module = "rootdet", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElem(CycloElem);

impl PyElem {
    fn same_field(&self, other: &PyElem) -> PyResult<()> {
        if self.0.ctx().n() == other.0.ctx().n() {
            Ok(())
        } else {
            Err(err(rootdet::Error::ContextMismatch(self.0.ctx().n(), other.0.ctx().n())))
        }
    }
}

#[pymethods]
impl PyElem {
    #[getter]
    fn n(&self) -> usize {
        self.0.ctx().n()
    }

    fn __add__(&self, other: &PyElem) -> PyResult<PyElem> {
        self.same_field(other)?;
        self.0.checked_add(&other.0).map(PyElem).map_err(err)
    }

    fn __sub__(&self, other: &PyElem) -> PyResult<PyElem> {
        self.0.checked_sub(&other.0).map(PyElem).map_err(err)
    }

    fn __mul__(&self, other: &PyElem) -> PyResult<PyElem> {
        self.0.checked_mul(&other.0).map(PyElem).map_err(err)
    }

    fn __truediv__(&self, other: &PyElem) -> PyResult<PyElem> {
        self.0.checked_div(&other.0).map(PyElem).map_err(err)
    }

    fn __neg__(&self) -> PyElem {
        PyElem(-&self.0)
    }

    fn inverse(&self) -> PyResult<PyElem> {
        self.0.inverse().map(PyElem).map_err(err)
    }

    /// Image under ζ ↦ ζ^t.
    fn galois(&self, t: i64) -> PyResult<PyElem> {
        self.0.galois(t).map(PyElem).map_err(err)
    }

    fn conjugate(&self) -> PyElem {
        PyElem(self.0.conjugate())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// "p/q" when the element is rational, else None.
    fn as_rational(&self) -> Option<String> {
        self.0.as_rational().map(|r| r.to_string())
    }

    /// Coordinates in the power basis, as "p/q" strings.
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(ToString::to_string).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Elem(n={}, {})", self.0.ctx().n(), self.0)
    }
}

/// Square matrix over Q(ζ_n).
#[pyclass(name = "Matrix", module = "rootdet", frozen)]
struct PyMatrix(CMatrix);

fn kind(name: &str) -> PyResult<MatrixKind> {
    name.parse().map_err(err)
}

#[pymethods]
impl PyMatrix {
    /// Builds the named root-of-unity matrix ("a", "b", "c", "c1", "tilde-a", "s19", "two-c").
    #[staticmethod]
    #[pyo3(signature = (name, n, size=None))]
    fn build(name: &str, n: usize, size: Option<usize>) -> PyResult<Self> {
        let ctx = CycloContext::new(n).map_err(err)?;
        let size = size.unwrap_or(n - 1);
        rootdet::build(kind(name)?, &ctx, size).map(PyMatrix).map_err(err)
    }

    /// Matrix from rows of ints or "p/q" strings.
    #[staticmethod]
    fn from_rows(field: &PyField, rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(to_rational).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        CMatrix::from_rationals(&field.ctx, &rows).map(PyMatrix).map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.rows()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<PyElem> {
        if i >= self.0.rows() || j >= self.0.cols() {
            return Err(err(rootdet::Error::IndexOutOfRange {
                index: i.max(j),
                dim: self.0.rows(),
            }));
        }
        Ok(PyElem(self.0.get(i, j).clone()))
    }

    fn det(&self) -> PyResult<PyElem> {
        self.0.det().map(PyElem).map_err(err)
    }

    /// `(d0, d1)` with `det[x + m_jk] = d0 + d1·x`.
    fn det_affine(&self) -> PyResult<(PyElem, PyElem)> {
        let (d0, d1) = self.0.det_affine().map_err(err)?;
        Ok((PyElem(d0), PyElem(d1)))
    }

    /// Coefficients of `det(xI − M)`, lowest degree first.
    fn charpoly(&self) -> PyResult<Vec<PyElem>> {
        let p = self.0.charpoly().map_err(err)?;
        Ok(p.coeffs().iter().cloned().map(PyElem).collect())
    }

    fn charpoly_str(&self) -> PyResult<String> {
        Ok(self.0.charpoly().map_err(err)?.to_string())
    }

    fn is_hermitian(&self) -> bool {
        self.0.is_hermitian()
    }

    /// Signed sum over derangements of the product of selected entries.
    #[pyo3(signature = (force=false))]
    fn derangement_sum(&self, py: Python<'_>, force: bool) -> PyResult<PyElem> {
        let m = self.0.clone();
        py.detach(move || rootdet::signed_derangement_sum(&m, force))
            .map(PyElem)
            .map_err(err)
    }
}

/// Runs one named verifier at one n and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (identity, n, oracle=false, force=false))]
fn verify<'py>(
    py: Python<'py>,
    identity: &str,
    n: usize,
    oracle: bool,
    force: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = suite::lookup(identity).map_err(err)?;
    if !spec.admits(n) {
        return Err(PyValueError::new_err(format!("n = {n} is not admissible for {identity}")));
    }
    let opts = OracleOpts { enabled: oracle, force };
    let r = py.detach(|| spec.run(n, opts)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("identity", r.identity)?;
    d.set_item("n", r.n)?;
    d.set_item("params", r.params)?;
    d.set_item("expected", r.expected)?;
    d.set_item("computed", r.computed)?;
    d.set_item("passed", r.passed)?;
    d.set_item("elapsed_seconds", r.elapsed_seconds)?;
    d.set_item("tool_version", r.tool_version)?;
    Ok(d)
}

/// Names of every registered verifier.
#[pyfunction]
fn identities() -> Vec<&'static str> {
    suite::IDENTITIES.iter().map(|s| s.name).collect()
}

#[pyfunction]
fn cyclotomic_polynomial(n: u64) -> PyResult<Vec<BigInt>> {
    rootdet::cyclotomic_polynomial(n).map_err(err)
}

#[pyfunction]
fn derangement_count(m: u64) -> BigInt {
    rootdet::derangement_count(m)
}

/// `det[x + entries]` of the named matrix at size n−1, rendered exactly.
#[pyfunction]
#[pyo3(signature = (name, n, x=None))]
fn shifted_det(name: &str, n: usize, x: Option<Bound<'_, PyAny>>) -> PyResult<String> {
    let x = x.as_ref().map(to_rational).transpose()?;
    rootdet::cli::shifted_det(kind(name)?, n, x.as_ref())
        .map(|v| v.to_string())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "rootdet")]
fn rootdet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyElem>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(derangement_count, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_det, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
