//! Python bindings: closed forms, series, residues and the identity checks.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyTuple};

use mzvff::exactalg::rational::fmt_rational;
use mzvff::exactalg::{default_names, wire::RationalFunctionDoc};
use mzvff::verify::{self, VerifyOptions};
use mzvff::zeta_genus as genus;
use mzvff::zeta_polyring::{self as poly, DoublePole, PolyZetaContext};
use mzvff::zeta_rational as g0;
use mzvff::{oracle, FactoredRational, FunctionFieldSpec, LPolynomial, Rational, TruncatedSeries};

create_exception!(mzvff, MzvffError, PyException);

fn err(e: mzvff::Error) -> PyErr {
    MzvffError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((fmt_rational(r),))
}

/// `{exponent tuple: Fraction}`
fn series_dict<'py>(py: Python<'py>, s: &TruncatedSeries) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (e, c) in s.iter() {
        out.set_item(PyTuple::new(py, e.iter())?, fraction(py, c)?)?;
    }
    Ok(out)
}

/// An exact rational function with named variables.
#[pyclass(name = "RationalFunction", module = "mzvff", frozen)]
struct PyRationalFunction {
    inner: FactoredRational,
    names: Vec<String>,
}

impl PyRationalFunction {
    fn new(inner: FactoredRational, names: Vec<String>) -> Self {
        PyRationalFunction { inner, names }
    }

    fn x(inner: FactoredRational) -> Self {
        let names = default_names(inner.arity());
        Self::new(inner, names)
    }
}

#[pymethods]
impl PyRationalFunction {
    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.names.clone()
    }

    #[getter]
    fn is_polynomial(&self) -> bool {
        self.inner.is_polynomial()
    }

    fn __str__(&self) -> String {
        self.inner.render_with(&self.names)
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({:?})", self.__str__())
    }

    fn __eq__(&self, other: &Self) -> PyResult<bool> {
        self.inner.equals(&other.inner).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self::new(self.inner.mul(&other.inner).map_err(err)?, self.names.clone()))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self::new(self.inner.add(&other.inner).map_err(err)?, self.names.clone()))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self::new(self.inner.sub(&other.inner).map_err(err)?, self.names.clone()))
    }

    fn __neg__(&self) -> Self {
        Self::new(self.inner.neg(), self.names.clone())
    }

    fn reduce(&self) -> Self {
        Self::new(self.inner.reduce(), self.names.clone())
    }

    /// Power-series coefficients on the box `[0, bound]^d`.
    fn series<'py>(&self, py: Python<'py>, bound: usize) -> PyResult<Bound<'py, PyDict>> {
        series_dict(py, &self.inner.series_expand(bound).map_err(err)?)
    }

    fn evaluate(&self, point: Vec<Complex64>) -> PyResult<Complex64> {
        self.inner.evaluate(&point).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&RationalFunctionDoc::from_rational(&self.inner, &self.names))
            .expect("serializable")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: RationalFunctionDoc =
            serde_json::from_str(text).map_err(|e| MzvffError::new_err(e.to_string()))?;
        Ok(Self::new(doc.to_rational().map_err(err)?, doc.variables))
    }
}

/// Numerical data of a function field: `q`, genus, class number, `b_0..b_{2g-2}`.
#[pyclass(name = "FieldSpec", module = "mzvff", frozen)]
struct PyFieldSpec {
    inner: FunctionFieldSpec,
}

#[pymethods]
impl PyFieldSpec {
    #[new]
    #[pyo3(signature = (q, genus, class_number, b=Vec::new()))]
    fn new(q: u64, genus: u32, class_number: u64, b: Vec<u64>) -> PyResult<Self> {
        let inner = FunctionFieldSpec::new(q, genus, class_number, b).map_err(err)?;
        Ok(PyFieldSpec { inner })
    }

    #[staticmethod]
    fn rational(q: u64) -> PyResult<Self> {
        Ok(PyFieldSpec {
            inner: FunctionFieldSpec::rational(q).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyFieldSpec {
            inner: FunctionFieldSpec::from_json(text).map_err(err)?,
        })
    }

    /// Spec from the numerator `L(t)` of the one-variable zeta function.
    #[staticmethod]
    fn from_l_polynomial(q: u64, coefficients: Vec<i64>) -> PyResult<Self> {
        let l = LPolynomial::new(coefficients).map_err(err)?;
        Ok(PyFieldSpec {
            inner: FunctionFieldSpec::from_l_polynomial(q, &l).map_err(err)?,
        })
    }

    /// A bundled spec by name, e.g. `"e5"`.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        let b = mzvff::bundled::bundled(name)
            .ok_or_else(|| MzvffError::new_err(format!("no bundled spec {name:?}")))?;
        Ok(PyFieldSpec {
            inner: b.spec().map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    #[getter]
    fn class_number(&self) -> u64 {
        self.inner.class_number()
    }

    #[getter]
    fn b(&self) -> Vec<u64> {
        self.inner.b_initial().to_vec()
    }

    fn effective_count(&self, n: u32) -> BigInt {
        self.inner.effective_count(n)
    }

    /// `Z(K, t)` in the variable `t`.
    fn one_var_zeta(&self) -> PyRationalFunction {
        PyRationalFunction::new(self.inner.one_var_zeta(), vec!["t".into()])
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "FieldSpec(q={}, genus={}, class_number={}, b={:?})",
            self.inner.q(),
            self.inner.genus(),
            self.inner.class_number(),
            self.inner.b_initial()
        )
    }
}

fn ctx(q: u64, d: usize) -> PyResult<PolyZetaContext> {
    PolyZetaContext::new(q, d).map_err(err)
}

/// `Z_d(F_q[T])` in `x_k = q^{-s_k}`.
#[pyfunction]
fn closed_form_poly(q: u64, d: usize) -> PyResult<PyRationalFunction> {
    Ok(PyRationalFunction::x(poly::closed_form_poly(&ctx(q, d)?)))
}

/// The completed function `xi_d(F_q[T])`.
#[pyfunction]
fn completed_xi(q: u64, d: usize) -> PyResult<PyRationalFunction> {
    Ok(PyRationalFunction::x(poly::completed_xi(&ctx(q, d)?)))
}

/// `Z_d(F_q(T))` in `x_k = q^{-s_k}`.
#[pyfunction]
fn closed_form_genus0(q: u64, d: usize) -> PyResult<PyRationalFunction> {
    Ok(PyRationalFunction::x(g0::closed_form_genus0(q, d).map_err(err)?))
}

/// `Z_2(K)` for genus `g >= 1`, in `u = x1 x2`, `v = x2`.
#[pyfunction]
fn closed_form_genus(spec: &PyFieldSpec) -> PyResult<PyRationalFunction> {
    let form = genus::closed_form_genus_d2(&spec.inner).map_err(err)?;
    Ok(PyRationalFunction::new(form.total, genus::uv_names()))
}

#[pyfunction]
fn check_involution(q: u64, d: usize) -> PyResult<bool> {
    poly::check_involution(&ctx(q, d)?).map_err(err)
}

#[pyfunction]
fn mixed_relation_d2(q: u64) -> PyResult<bool> {
    poly::mixed_relation_d2(q).map_err(err)
}

/// Residue times `log q` on `w=1` or `s+w=2` (`var` is `"s"` or `"w"`).
/// Returns the exact value and its form in the `s, w` coordinates.
#[pyfunction]
#[pyo3(signature = (q, pole, var=None))]
fn scaled_residue(q: u64, pole: &str, var: Option<&str>) -> PyResult<(PyRationalFunction, String)> {
    let pole = DoublePole::parse(pole, var).map_err(err)?;
    let r = poly::scaled_residue_d2(q, pole).map_err(err)?;
    Ok((PyRationalFunction::x(r.value), r.s_form))
}

/// Euler product over irreducibles of degree `<= max_degree`, in `y` coordinates.
#[pyfunction]
fn euler_truncation<'py>(
    py: Python<'py>,
    q: u64,
    d: usize,
    max_degree: usize,
) -> PyResult<Bound<'py, PyDict>> {
    series_dict(py, &poly::euler_truncation(&ctx(q, d)?, max_degree).map_err(err)?)
}

#[pyfunction]
fn euler_agrees(q: u64, d: usize, max_degree: usize) -> PyResult<bool> {
    Ok(poly::euler_agreement(&ctx(q, d)?, max_degree).map_err(err)?.agrees())
}

/// `(is_polynomial, degrees, leftover factors as text)` for `Q * Z_d(F_q(T))`.
#[pyfunction]
fn q_times_z(q: u64, d: usize) -> PyResult<(bool, Vec<i64>, String)> {
    let r = g0::q_times_z(q, d).map_err(err)?;
    let names = default_names(d);
    let left: String = r
        .leftover
        .iter()
        .map(|(f, _)| f.render_with(q, &names))
        .collect();
    Ok((r.is_polynomial() && r.within_bound(), r.degrees, left))
}

#[pyfunction]
fn decomposition_check_d2(q: u64) -> PyResult<bool> {
    g0::decomposition_check_d2(q).map_err(err)
}

/// `(P, Q)` as rendered polynomials in `u, v`.
#[pyfunction]
fn pq_form(spec: &PyFieldSpec) -> PyResult<(String, String)> {
    let (p, q) = genus::pq_form(&spec.inner).map_err(err)?;
    let names = genus::uv_names();
    Ok((p.render_with(&names), q.render_with(&names)))
}

#[pyfunction]
fn degree_report<'py>(py: Python<'py>, spec: &PyFieldSpec) -> PyResult<Bound<'py, PyDict>> {
    let r = genus::degree_report(&spec.inner).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("p_deg_u", r.p_deg_u)?;
    out.set_item("p_deg_v", r.p_deg_v)?;
    out.set_item("q_deg_u", r.q_deg_u)?;
    out.set_item("q_deg_v", r.q_deg_v)?;
    out.set_item("p_bound_u", r.p_bound_u)?;
    out.set_item("p_bound_v", r.p_bound_v)?;
    Ok(out)
}

/// The defining nested sum `sum prod b_{m_k} x_k^{m_k}` over `m_1 <= ... <= m_d <= bound`.
#[pyfunction]
fn oracle_series<'py>(
    py: Python<'py>,
    spec: &PyFieldSpec,
    d: usize,
    bound: usize,
) -> PyResult<Bound<'py, PyDict>> {
    series_dict(py, &oracle::truncated_series_b(&spec.inner, d, bound))
}

#[pyfunction]
fn elliptic_point_count(p: u64, a: u64, b: u64) -> PyResult<u64> {
    oracle::elliptic_point_count(p, a, b).map_err(err)
}

/// Runs the identity checks; returns `(all_passed, [check dicts])`.
#[pyfunction]
#[pyo3(signature = (only=None, qs=None, depths=None, trunc=None))]
fn run_checks<'py>(
    py: Python<'py>,
    only: Option<Vec<String>>,
    qs: Option<Vec<u64>>,
    depths: Option<Vec<usize>>,
    trunc: Option<usize>,
) -> PyResult<(bool, Bound<'py, PyList>)> {
    let opts = VerifyOptions {
        only,
        qs,
        depths,
        trunc,
        ..VerifyOptions::default()
    };
    let report = verify::run(&opts).map_err(err)?;
    let list = PyList::empty(py);
    for c in &report.checks {
        let d = PyDict::new(py);
        d.set_item("name", &c.name)?;
        d.set_item("family", c.family)?;
        d.set_item("anchor", c.anchor)?;
        d.set_item("passed", c.passed)?;
        d.set_item("detail", &c.detail)?;
        list.append(d)?;
    }
    Ok((report.passed(), list))
}

#[pymodule(name = "mzvff")]
fn mzvff_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MzvffError", m.py().get_type::<MzvffError>())?;
    m.add_class::<PyRationalFunction>()?;
    m.add_class::<PyFieldSpec>()?;
    m.add_function(wrap_pyfunction!(closed_form_poly, m)?)?;
    m.add_function(wrap_pyfunction!(completed_xi, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_genus0, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_genus, m)?)?;
    m.add_function(wrap_pyfunction!(check_involution, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_relation_d2, m)?)?;
    m.add_function(wrap_pyfunction!(scaled_residue, m)?)?;
    m.add_function(wrap_pyfunction!(euler_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(euler_agrees, m)?)?;
    m.add_function(wrap_pyfunction!(q_times_z, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_check_d2, m)?)?;
    m.add_function(wrap_pyfunction!(pq_form, m)?)?;
    m.add_function(wrap_pyfunction!(degree_report, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_series, m)?)?;
    m.add_function(wrap_pyfunction!(elliptic_point_count, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
