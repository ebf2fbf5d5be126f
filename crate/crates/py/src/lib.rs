//! Python bindings: polynomials, normal-form bundles, Hilbert symbols,
//! quadratic forms over ℚ and the verification suites.

use std::sync::Arc;

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use qbundle_core::algebra::{parse_rational, BigRational, LaurentPolynomial, RingHomomorphism, VariableTable};
use qbundle_core::brauer::{self, Place, RationalQuadraticForm};
use qbundle_core::bundles::{minimum_dimension, DiagonalQuadricBundle};
use qbundle_core::report::VerificationReport;
use qbundle_core::suites::{self, SuiteOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts a serializable value to native Python objects through JSON.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts `int`, `fractions.Fraction` or a string such as `"-3/4"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let text = obj.str()?.to_string();
    parse_rational(text.trim()).map_err(value_err)
}

fn parse_place(obj: &Bound<'_, PyAny>) -> PyResult<Place> {
    obj.str()?.to_string().parse::<Place>().map_err(value_err)
}

fn report_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, r)
}

/// A Laurent polynomial with rational coefficients.
///
/// `Polynomial("x^2 - y*z^-1", ["x", "y"], invertible=["z"])`
#[pyclass(module = "qbundle", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Polynomial {
    inner: LaurentPolynomial,
}

impl Polynomial {
    fn wrap(inner: LaurentPolynomial) -> Self {
        Self { inner }
    }

    fn compatible(&self, other: &Bound<'_, PyAny>) -> PyResult<LaurentPolynomial> {
        if let Ok(p) = other.cast::<Polynomial>() {
            return Ok(p.get().inner.clone());
        }
        let c = rational(other)?;
        Ok(LaurentPolynomial::constant(self.inner.table(), c))
    }
}

#[pymethods]
impl Polynomial {
    #[new]
    #[pyo3(signature = (text, variables, invertible = Vec::new()))]
    fn new(text: &str, variables: Vec<String>, invertible: Vec<String>) -> PyResult<Self> {
        let vars = variables
            .into_iter()
            .map(|v| (v, false))
            .chain(invertible.into_iter().map(|v| (v, true)));
        let table = VariableTable::new(vars).map_err(value_err)?;
        LaurentPolynomial::parse(text, &table).map(Self::wrap).map_err(value_err)
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.table().names().to_vec()
    }

    /// `(exponents, coefficient)` pairs in descending lex order.
    fn terms(&self) -> Vec<(Vec<i32>, String)> {
        self.inner.terms().rev().map(|(e, c)| (e.clone(), c.to_string())).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __len__(&self) -> usize {
        self.inner.num_terms()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.to_string())
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = self.compatible(other)?;
        self.inner.checked_add(&o).map(Self::wrap).map_err(value_err)
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = self.compatible(other)?;
        self.inner.checked_sub(&o).map(Self::wrap).map_err(value_err)
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = self.compatible(other)?;
        o.checked_sub(&self.inner).map(Self::wrap).map_err(value_err)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = self.compatible(other)?;
        self.inner.checked_mul(&o).map(Self::wrap).map_err(value_err)
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        Self::wrap(-&self.inner)
    }

    fn __pow__(&self, k: i64, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(value_err("modular powers are not supported"));
        }
        self.inner.pow(k).map(Self::wrap).map_err(value_err)
    }

    /// Exact division; raises `ZeroDivisionError` if the quotient is not a
    /// Laurent polynomial.
    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = self.compatible(other)?;
        self.inner
            .divide_exact(&o)
            .map(Self::wrap)
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    /// Substitutes polynomials (given as text over the same variables) for
    /// the named variables.
    fn substitute(&self, images: std::collections::BTreeMap<String, String>) -> PyResult<Self> {
        let table: &Arc<VariableTable> = self.inner.table();
        let pairs: Vec<(&str, &str)> = images.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let h = RingHomomorphism::from_text(table, table, &pairs).map_err(value_err)?;
        h.apply(&self.inner).map(Self::wrap).map_err(value_err)
    }
}

/// One of the eight diagonal normal forms over affine `n`-space.
#[pyclass(module = "qbundle", frozen)]
struct QuadricBundle {
    inner: DiagonalQuadricBundle,
}

#[pymethods]
impl QuadricBundle {
    /// `n` defaults to the smallest base dimension the entry needs.
    #[new]
    #[pyo3(signature = (entry, n = None))]
    fn new(entry: u8, n: Option<usize>) -> PyResult<Self> {
        let n = match n {
            Some(n) => n,
            None => minimum_dimension(entry).map_err(value_err)?.max(1),
        };
        DiagonalQuadricBundle::table_entry(entry, n)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[getter]
    fn entry(&self) -> Option<u8> {
        self.inner.entry()
    }

    #[getter]
    fn base_dimension(&self) -> usize {
        self.inner.base_dimension()
    }

    fn coefficients(&self) -> Vec<Polynomial> {
        self.inner.coefficients().iter().cloned().map(Polynomial::wrap).collect()
    }

    fn equation(&self) -> Polynomial {
        Polynomial::wrap(self.inner.equation())
    }

    fn discriminant(&self) -> Polynomial {
        Polynomial::wrap(self.inner.discriminant())
    }

    fn discriminant_square_class(&self) -> Polynomial {
        Polynomial::wrap(self.inner.discriminant_square_class())
    }

    fn flatness_certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = self.inner.flatness_certificate().map_err(value_err)?;
        to_py(py, &c)
    }

    /// Rank of the Gram matrix where exactly the listed base coordinates
    /// (1-based) vanish.
    fn gram_rank(&self, zeroset: Vec<usize>) -> PyResult<usize> {
        self.inner.gram_rank_on_stratum(&zeroset).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("QuadricBundle({})", self.inner.equation())
    }
}

/// A nondegenerate diagonal quadratic form over ℚ.
#[pyclass(module = "qbundle", frozen)]
struct QuadraticForm {
    inner: RationalQuadraticForm,
}

#[pymethods]
impl QuadraticForm {
    #[new]
    fn new(diagonal: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let diag = diagonal.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        RationalQuadraticForm::new(diag).map(|inner| Self { inner }).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QuadraticForm({})", self.inner)
    }

    /// Dimension, discriminant, signature and Hasse invariants.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.invariants())
    }

    fn is_isotropic(&self) -> bool {
        self.inner.is_isotropic().isotropic
    }

    /// A nonzero rational zero, if one exists.
    fn find_zero(&self) -> Option<Vec<String>> {
        self.inner
            .is_isotropic()
            .witness
            .map(|w| w.iter().map(|x| x.to_string()).collect())
    }

    fn isometric(&self, other: &QuadraticForm) -> bool {
        self.inner.isometric(&other.inner)
    }

    /// The scale `c` with `self ≅ c·other`, or `None`.
    fn similarity_scale(&self, other: &QuadraticForm) -> PyResult<Option<String>> {
        let s = brauer::forms_similar(&self.inner, &other.inner).map_err(value_err)?;
        Ok(s.scale.filter(|_| s.similar))
    }
}

/// `(a, b)_v` as `1` or `-1`; `place` is `"real"` or a prime.
#[pyfunction]
#[pyo3(signature = (a, b, place = None))]
fn hilbert_symbol(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, place: Option<&Bound<'_, PyAny>>) -> PyResult<i8> {
    let v = match place {
        Some(p) => parse_place(p)?,
        None => Place::Real,
    };
    brauer::hilbert_symbol(&rational(a)?, &rational(b)?, v).map_err(value_err)
}

/// Compares the descent target form with the Albert form for `(p, q, r, d)`.
#[pyfunction]
fn quaternion_descent<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    r: &Bound<'py, PyAny>,
    d: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = brauer::verify_quaternion_descent_instance(&rational(p)?, &rational(q)?, &rational(r)?, d)
        .map_err(value_err)?;
    to_py(py, &rep)
}

/// Runs the appendix checks; `gamma_exp` is `-1`, `-2` or `None` for auto.
#[pyfunction]
#[pyo3(signature = (window = 4, gamma_exp = None))]
fn verify_appendix<'py>(py: Python<'py>, window: i32, gamma_exp: Option<i32>) -> PyResult<Bound<'py, PyAny>> {
    if window < 4 {
        return Err(value_err(format!("window must be at least 4, got {window}")));
    }
    if !matches!(gamma_exp, None | Some(-1) | Some(-2)) {
        return Err(value_err("gamma_exp must be -1, -2 or None"));
    }
    let opts = SuiteOptions {
        window,
        gamma_exp,
        ..SuiteOptions::default()
    };
    report_dict(py, &suites::appendix_suite(&opts))
}

/// Runs a named suite and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite, seed = suites::DEFAULT_SEED, window = 4, gamma_exp = None))]
fn run_suite(py: Python<'_>, suite: &str, seed: u64, window: i32, gamma_exp: Option<i32>) -> PyResult<String> {
    let opts = SuiteOptions {
        seed,
        window,
        gamma_exp,
        ..SuiteOptions::default()
    };
    let name = suite.to_string();
    let rep = py.detach(move || suites::run(&name, &opts)).map_err(value_err)?;
    Ok(rep.to_json())
}

#[pymodule]
fn qbundle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_class::<QuadricBundle>()?;
    m.add_class::<QuadraticForm>()?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(quaternion_descent, m)?)?;
    m.add_function(wrap_pyfunction!(verify_appendix, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("SUITES", suites::SUITES.to_vec())?;
    m.add("DEFAULT_SEED", suites::DEFAULT_SEED)?;
    Ok(())
}
