//! Python bindings: rings, finitely presented modules, the reflexivity
//! checks and the script runner.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use rfx::complexes::{depth_at_irrelevant, ext_table, Depth};
use rfx::matrix::Matrix;
use rfx::polyring::{Field, MonomialOrder, PolyRing};
use rfx::quotmod::{dual_module, free_resolution, syzygy, transpose, FPModule, Ideal, QuotientRing};
use rfx::reflexivity::{gorenstein_dim_estimate, is_left_n_orthogonal, is_n_stably_reflexive, is_reflexive, Certificate};

create_exception!(rfx_py, RfxError, PyException);

fn err(e: rfx::Error) -> PyErr {
    RfxError::new_err(e.to_string())
}

/// `(verdict, [(check, subject, verdict, detail), ...])`
type Checked = (String, Vec<(String, String, String, String)>);

fn checked(c: Certificate) -> Checked {
    let w = c.witnesses.into_iter().map(|w| (w.check, w.subject, w.verdict.to_string(), w.detail)).collect();
    (c.verdict.to_string(), w)
}

/// A quotient `k[vars]/(relations)`.
#[pyclass(name = "Ring", frozen, skip_from_py_object, module = "rfx_py")]
#[derive(Clone)]
pub struct PyRing {
    inner: Arc<QuotientRing>,
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (vars, relations = Vec::new(), field = "QQ", order = "degrevlex"))]
    fn new(vars: Vec<String>, relations: Vec<String>, field: &str, order: &str) -> PyResult<Self> {
        let field = Field::parse(field).map_err(err)?;
        let order = MonomialOrder::parse(order).map_err(err)?;
        let p = Arc::new(PolyRing::from_names(field, vars, order).map_err(err)?);
        let rels = relations.iter().map(|r| p.parse(r)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(PyRing { inner: QuotientRing::auto(p, &rels) })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.poly.vars.clone()
    }

    #[getter]
    fn is_graded(&self) -> bool {
        self.inner.is_graded()
    }

    /// Reduced Gröbner basis of the defining ideal.
    fn relations(&self) -> Vec<String> {
        self.inner.ideal_gens().iter().map(|g| self.inner.poly.format(g)).collect()
    }

    fn reduce(&self, f: &str) -> PyResult<String> {
        let p = self.inner.parse(f).map_err(err)?;
        Ok(self.inner.format(&self.inner.reduce(&p)))
    }

    /// Reduced Gröbner basis of an ideal of this ring.
    fn groebner(&self, gens: Vec<String>) -> PyResult<Vec<String>> {
        let g = gens.iter().map(|s| self.inner.parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(Ideal::new(&self.inner, g).basis_strings())
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A finitely presented module `coker(A^m → A^n)`.
#[pyclass(name = "Module", frozen, skip_from_py_object, module = "rfx_py")]
#[derive(Clone)]
pub struct PyFpModule {
    inner: FPModule,
}

impl PyFpModule {
    fn wrap(inner: FPModule) -> Self {
        PyFpModule { inner }
    }
}

#[pymethods]
impl PyFpModule {
    /// Cokernel of the matrix given by rows of polynomial strings.
    #[staticmethod]
    #[pyo3(signature = (ring, rows, degrees = None))]
    fn coker(ring: &PyRing, rows: Vec<Vec<String>>, degrees: Option<Vec<i64>>) -> PyResult<Self> {
        let r = &ring.inner;
        if rows.iter().any(|row| row.len() != rows[0].len()) {
            return Err(PyValueError::new_err("rows must have equal length"));
        }
        let rows: Vec<Vec<&str>> = rows.iter().map(|row| row.iter().map(String::as_str).collect()).collect();
        let m = Matrix::parse(&r.poly, &rows).map_err(err)?;
        let m = match degrees {
            Some(d) => FPModule::new(r, m, Some(d)).map_err(err)?,
            None => FPModule::auto(r, m, None),
        };
        Ok(Self::wrap(m))
    }

    #[staticmethod]
    fn free(ring: &PyRing, rank: usize) -> Self {
        Self::wrap(FPModule::free(&ring.inner, rank))
    }

    #[staticmethod]
    fn residue_field(ring: &PyRing) -> Self {
        Self::wrap(FPModule::residue_field(&ring.inner))
    }

    #[staticmethod]
    fn ideal(ring: &PyRing, gens: Vec<String>) -> PyResult<Self> {
        let g = gens.iter().map(|s| ring.inner.parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(Self::wrap(FPModule::ideal(&ring.inner, &g)))
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.ring.clone() }
    }

    #[getter]
    fn ngens(&self) -> usize {
        self.inner.ngens()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn presentation(&self) -> Vec<Vec<String>> {
        self.inner.pres.to_strings(&self.inner.ring.poly)
    }

    /// `(numerator coefficients from t^shift, shift, denominator weights)`, in lowest terms.
    fn hilbert(&self) -> PyResult<(Vec<i64>, i64, Vec<i64>)> {
        let h = self.inner.hilbert_series().map_err(err)?.reduced();
        let num = h.numerator_vec();
        let shift = num.first().map_or(0, |t| t.0);
        let top = num.last().map_or(0, |t| t.0);
        let mut coeffs = vec![0; (top - shift + 1).max(0) as usize];
        for (e, c) in num {
            coeffs[(e - shift) as usize] = c;
        }
        Ok((coeffs, shift, h.weights.clone()))
    }

    fn dual(&self) -> Self {
        Self::wrap(dual_module(&self.inner).module)
    }

    fn transpose(&self) -> Self {
        Self::wrap(transpose(&self.inner))
    }

    fn syzygy(&self, n: usize) -> Self {
        Self::wrap(syzygy(&self.inner, n))
    }

    /// Betti ranks of a free resolution of the given length, and whether it is complete.
    #[pyo3(signature = (length = 6))]
    fn resolve(&self, length: usize) -> (Vec<usize>, bool) {
        let r = free_resolution(&self.inner, length);
        (r.ranks(), r.complete)
    }

    /// `[Ext^0(M, N), ..., Ext^top(M, N)]`, with `N = A` by default.
    #[pyo3(signature = (top, other = None))]
    fn ext(&self, top: usize, other: Option<&PyFpModule>) -> PyResult<Vec<PyFpModule>> {
        let n = other.map_or_else(|| FPModule::free(&self.inner.ring, 1), |o| o.inner.clone());
        Ok(ext_table(&self.inner, &n, top).map_err(err)?.into_iter().map(Self::wrap).collect())
    }

    fn fitting(&self, i: usize) -> Vec<String> {
        self.inner.fitting_ideal(i).basis_strings()
    }

    /// `(depth, exact)`: when not exact the depth is only a lower bound.
    #[pyo3(signature = (window = 6))]
    fn depth(&self, window: usize) -> PyResult<(usize, bool)> {
        Ok(match depth_at_irrelevant(&self.inner, window).map_err(err)? {
            Depth::Exact(d) => (d, true),
            Depth::AtLeast(d) => (d, false),
        })
    }

    /// `(value, conclusive)`
    #[pyo3(signature = (window = 6))]
    fn gdim(&self, window: usize) -> PyResult<(usize, bool)> {
        let g = gorenstein_dim_estimate(&self.inner, window).map_err(err)?;
        Ok((g.value, g.conclusive))
    }

    fn is_reflexive(&self) -> Checked {
        checked(is_reflexive(&self.inner))
    }

    fn is_n_stably_reflexive(&self, n: usize) -> PyResult<Checked> {
        Ok(checked(is_n_stably_reflexive(&self.inner, n).map_err(err)?))
    }

    fn is_left_orthogonal(&self, n: usize) -> PyResult<Checked> {
        Ok(checked(is_left_n_orthogonal(&self.inner, n).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Module(over {}, {} generators, {} relations)", self.inner.ring, self.inner.ngens(), self.inner.nrels())
    }
}

/// Runs a script and returns `(exit code, JSON report)`; parse errors raise `ValueError`.
#[pyfunction]
#[pyo3(signature = (text, window = 6, field = "QQ", order = "degrevlex", minimal = false))]
fn run_script(text: &str, window: usize, field: &str, order: &str, minimal: bool) -> PyResult<(i32, String)> {
    let opts = rfx_cli::Options {
        window,
        order: MonomialOrder::parse(order).map_err(err)?,
        field: Field::parse(field).map_err(err)?,
        minimal,
    };
    let reports = rfx_cli::run_script(text, opts).map_err(|d| PyValueError::new_err(d.to_string()))?;
    let inputs = serde_json::json!({ "window": window, "order": order, "field": field, "minimal": minimal });
    let doc = rfx_cli::json_document("run_script", inputs, &reports, 0.0);
    Ok((rfx_cli::overall(&reports).exit_code(), doc.to_string()))
}

#[pymodule]
fn rfx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyFpModule>()?;
    m.add_function(wrap_pyfunction!(run_script, m)?)?;
    m.add("RfxError", m.py().get_type::<RfxError>())?;
    Ok(())
}
