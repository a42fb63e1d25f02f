//! Python bindings for `vecpart`.
//!
//! Rationals cross the boundary as `fractions.Fraction`. Inputs accept
//! `int`, `Fraction` or a `"p/q"` string; floats are rejected because they
//! are not exact.

use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use vecpart::cli::parse_rational;
use vecpart::{Error, LatticeVector, Prop1Window, Scalar};

create_exception!(
    vecpart,
    NotPointedError,
    PyValueError,
    "The cone spanned by the columns contains a line."
);
create_exception!(
    vecpart,
    PreconditionError,
    PyValueError,
    "The weight does not satisfy the recurrence an identity requires."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotPointed { certificate } => {
            NotPointedError::new_err((not_pointed_message(&certificate), certificate.into_coords()))
        }
        Error::PreconditionFailed(m) => PreconditionError::new_err(m),
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn not_pointed_message(certificate: &LatticeVector) -> String {
    format!("cone is not pointed: A x = 0 for x = {certificate}")
}

trait PyResultExt<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> PyResultExt<T> for vecpart::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn fraction<'py>(py: Python<'py>, v: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    let class = py.import("fractions")?.getattr("Fraction")?;
    class.call1((v.to_string(),))
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(PyValueError::new_err(format!(
            "float {} is not exact; pass an int, Fraction or \"p/q\" string",
            obj.str()?
        )));
    }
    parse_rational(obj.str()?.to_str()?).map_err(PyValueError::new_err)
}

fn rationals(objs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Scalar>> {
    objs.iter().map(rational).collect()
}

fn vector(coords: Vec<i64>) -> LatticeVector {
    LatticeVector::new(coords)
}

fn tuple<'py>(py: Python<'py>, v: &LatticeVector) -> PyResult<Bound<'py, PyTuple>> {
    PyTuple::new(py, v.coords())
}

/// Integer matrix whose columns are the steps.
#[pyclass(name = "StepMatrix", frozen, module = "vecpart")]
pub struct PyStepMatrix(vecpart::StepMatrix);

#[pymethods]
impl PyStepMatrix {
    /// Builds the matrix from its rows.
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        vecpart::StepMatrix::from_rows(&rows).py_err().map(Self)
    }

    #[staticmethod]
    fn from_columns(columns: Vec<Vec<i64>>) -> PyResult<Self> {
        vecpart::StepMatrix::from_columns(columns.into_iter().map(vector).collect())
            .py_err()
            .map(Self)
    }

    #[getter]
    fn nrows(&self) -> usize {
        self.0.nrows()
    }

    #[getter]
    fn ncols(&self) -> usize {
        self.0.ncols()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows()
    }

    fn columns(&self) -> Vec<Vec<i64>> {
        self.0
            .columns()
            .iter()
            .map(|c| c.coords().to_vec())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("StepMatrix({:?})", self.0.rows())
    }
}

/// A functional `ell` that is positive on every column.
#[pyclass(name = "ConeCertificate", frozen, module = "vecpart")]
pub struct PyConeCertificate(vecpart::ConeCertificate);

#[pymethods]
impl PyConeCertificate {
    /// Checks a user-supplied functional against the matrix.
    #[new]
    fn new(matrix: &PyStepMatrix, ell: Vec<i64>) -> PyResult<Self> {
        vecpart::ConeCertificate::from_functional(&matrix.0, vector(ell))
            .py_err()
            .map(Self)
    }

    #[getter]
    fn ell(&self) -> Vec<i64> {
        self.0.ell().coords().to_vec()
    }

    #[getter]
    fn step_degrees(&self) -> Vec<i64> {
        self.0.step_degrees().to_vec()
    }

    fn ell_degree(&self, v: Vec<i64>) -> PyResult<i64> {
        self.0.ell_degree(&vector(v)).py_err()
    }

    fn __repr__(&self) -> String {
        format!("ConeCertificate(ell={:?})", self.0.ell().coords())
    }
}

fn certificate(
    a: &PyStepMatrix,
    cert: Option<&PyConeCertificate>,
) -> PyResult<vecpart::ConeCertificate> {
    match cert {
        Some(c) => Ok(c.0.clone()),
        None => vecpart::certify_pointed(&a.0).py_err(),
    }
}

/// Weight `phi` on the nonnegative orthant.
#[pyclass(name = "WeightFunction", frozen, module = "vecpart")]
pub struct PyWeightFunction(vecpart::WeightFunction);

#[pymethods]
impl PyWeightFunction {
    #[staticmethod]
    fn constant_one() -> Self {
        Self(vecpart::WeightFunction::ConstantOne)
    }

    #[staticmethod]
    fn lattice_path_count() -> Self {
        Self(vecpart::WeightFunction::LatticePathCount)
    }

    /// `phi(x) = prod_j q_j^{x_j}`.
    #[staticmethod]
    fn geometric(q: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        Ok(Self(vecpart::WeightFunction::GeometricWeights(rationals(
            q,
        )?)))
    }

    /// `phi(x) = (|x|! / x!) c^{x + e^j}`, with `j` 0-based.
    #[staticmethod]
    fn multinomial_monomial(c: Vec<Bound<'_, PyAny>>, j: usize) -> PyResult<Self> {
        vecpart::WeightFunction::multinomial_monomial(rationals(c)?, j)
            .py_err()
            .map(Self)
    }

    /// Row-major values on `[0, shape_j - 1]`, last axis fastest; zero elsewhere.
    #[staticmethod]
    fn table(shape: Vec<usize>, values: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let table = vecpart::WeightTable::new(shape, rationals(values)?).py_err()?;
        Ok(Self(vecpart::WeightFunction::Table(table)))
    }

    fn __call__<'py>(&self, py: Python<'py>, x: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &vecpart::evaluate_weight(&self.0, &vector(x)).py_err()?)
    }

    fn __repr__(&self) -> String {
        match &self.0 {
            vecpart::WeightFunction::ConstantOne => "WeightFunction.constant_one()".into(),
            vecpart::WeightFunction::LatticePathCount => {
                "WeightFunction.lattice_path_count()".into()
            }
            vecpart::WeightFunction::GeometricWeights(q) => {
                format!("WeightFunction.geometric({})", fmt_list(q))
            }
            vecpart::WeightFunction::MultinomialMonomial { c, j } => {
                format!("WeightFunction.multinomial_monomial({}, {j})", fmt_list(c))
            }
            vecpart::WeightFunction::Table(t) => {
                format!("WeightFunction.table({:?}, ...)", t.shape())
            }
        }
    }
}

fn fmt_list(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("'{x}'")).collect();
    format!("[{}]", items.join(", "))
}

/// Sparse truncated power series with exact coefficients.
#[pyclass(name = "TruncatedSeries", frozen, module = "vecpart")]
pub struct PyTruncatedSeries(vecpart::TruncatedSeries);

#[pymethods]
impl PyTruncatedSeries {
    /// `terms` is an iterable of `(exponent, coefficient)` pairs; exponents
    /// of degree above `bound` are dropped.
    #[new]
    #[pyo3(signature = (grading, bound, terms = Vec::new()))]
    fn new(
        grading: Vec<i64>,
        bound: i64,
        terms: Vec<(Vec<i64>, Bound<'_, PyAny>)>,
    ) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(e, c)| Ok((vector(e), rational(&c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        vecpart::TruncatedSeries::from_terms(vector(grading), bound, terms)
            .py_err()
            .map(Self)
    }

    /// The variable `xi_j` in `nvars` variables graded by total degree.
    #[staticmethod]
    fn variable(nvars: usize, bound: i64, j: usize) -> PyResult<Self> {
        vecpart::TruncatedSeries::variable(nvars, bound, j)
            .py_err()
            .map(Self)
    }

    #[getter]
    fn grading(&self) -> Vec<i64> {
        self.0.grading().coords().to_vec()
    }

    #[getter]
    fn bound(&self) -> i64 {
        self.0.bound()
    }

    /// Nonzero terms in graded-lex order.
    fn terms<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyTuple>, Bound<'py, PyAny>)>> {
        self.0
            .terms()
            .into_iter()
            .map(|(e, c)| Ok((tuple(py, e)?, fraction(py, c)?)))
            .collect()
    }

    fn coeff<'py>(&self, py: Python<'py>, exponent: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coeff(&vector(exponent)))
    }

    fn __getitem__<'py>(&self, py: Python<'py>, exponent: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        self.coeff(py, exponent)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).py_err().map(Self)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).py_err().map(Self)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).py_err().map(Self)
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn scale(&self, k: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.scale(&rational(k)?)))
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().py_err().map(Self)
    }

    /// Sets variable `j` (0-based) to zero.
    fn project(&self, j: usize) -> PyResult<Self> {
        self.0.project(j).py_err().map(Self)
    }

    /// Signed sum of all coordinate projections.
    fn pi_operator(&self) -> PyResult<Self> {
        self.0.pi_operator().py_err().map(Self)
    }

    fn pi_operator_except(&self, j: usize) -> PyResult<Self> {
        self.0.pi_operator_except(j).py_err().map(Self)
    }

    /// Keeps the terms with every exponent at least 1.
    fn pi_filter(&self) -> Self {
        Self(self.0.pi_filter())
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!(
            "TruncatedSeries(grading={:?}, bound={}, terms={})",
            self.0.grading().coords(),
            self.0.bound(),
            self.0.len()
        )
    }
}

type Mismatch<'py> = (Bound<'py, PyTuple>, Bound<'py, PyAny>, Bound<'py, PyAny>);

/// Outcome of an identity check.
#[pyclass(name = "VerificationReport", frozen, module = "vecpart")]
pub struct PyVerificationReport(vecpart::VerificationReport);

#[pymethods]
impl PyVerificationReport {
    #[getter]
    fn identity(&self) -> &str {
        &self.0.identity
    }

    #[getter]
    fn holds(&self) -> bool {
        self.0.holds
    }

    #[getter]
    fn window(&self) -> &str {
        &self.0.window
    }

    #[getter]
    fn residual_terms(&self) -> usize {
        self.0.residual_terms
    }

    /// `(location, lhs, rhs)` of the first mismatch, or `None`.
    #[getter]
    fn first_violation<'py>(&self, py: Python<'py>) -> PyResult<Option<Mismatch<'py>>> {
        self.0
            .first_violation
            .as_ref()
            .map(|v| {
                Ok((
                    tuple(py, &v.location)?,
                    fraction(py, &v.lhs)?,
                    fraction(py, &v.rhs)?,
                ))
            })
            .transpose()
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __bool__(&self) -> bool {
        self.0.holds
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(identity={:?}, holds={}, residual_terms={})",
            self.0.identity,
            if self.0.holds { "True" } else { "False" },
            self.0.residual_terms
        )
    }
}

fn report(r: vecpart::Result<vecpart::VerificationReport>) -> PyResult<PyVerificationReport> {
    r.py_err().map(PyVerificationReport)
}

/// Finds a certificate that the cone is pointed, or raises `NotPointedError`
/// whose second argument is a nonzero `x >= 0` with `A x = 0`.
#[pyfunction]
fn certify_pointed(matrix: &PyStepMatrix) -> PyResult<PyConeCertificate> {
    vecpart::certify_pointed(&matrix.0)
        .py_err()
        .map(PyConeCertificate)
}

/// Number of solutions `x >= 0` of `A x = target`.
#[pyfunction]
#[pyo3(signature = (matrix, target, cert = None))]
fn vector_partition<'py>(
    py: Python<'py>,
    matrix: &PyStepMatrix,
    target: Vec<i64>,
    cert: Option<&PyConeCertificate>,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = certificate(matrix, cert)?;
    fraction(
        py,
        &vecpart::vector_partition(&matrix.0, &cert, &vector(target)).py_err()?,
    )
}

/// Sum of `phi(x)` over the solutions of `A x = target`.
#[pyfunction]
#[pyo3(signature = (matrix, target, phi, cert = None))]
fn generalized_vp<'py>(
    py: Python<'py>,
    matrix: &PyStepMatrix,
    target: Vec<i64>,
    phi: &PyWeightFunction,
    cert: Option<&PyConeCertificate>,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = certificate(matrix, cert)?;
    fraction(
        py,
        &vecpart::generalized_vp(&matrix.0, &cert, &vector(target), &phi.0).py_err()?,
    )
}

/// Solutions of `A x = target` with `x >= 0`, in lexicographic order.
#[pyfunction]
#[pyo3(signature = (matrix, target, cert = None))]
fn enumerate_solutions(
    matrix: &PyStepMatrix,
    target: Vec<i64>,
    cert: Option<&PyConeCertificate>,
) -> PyResult<Vec<Vec<i64>>> {
    let cert = certificate(matrix, cert)?;
    let set = vecpart::enumerate_solutions(&matrix.0, &cert, &vector(target)).py_err()?;
    Ok(set
        .solutions
        .into_iter()
        .map(LatticeVector::into_coords)
        .collect())
}

/// Points `A x`, `x >= 0`, with ell-degree at most `bound`, graded-lex.
#[pyfunction]
#[pyo3(signature = (matrix, bound, cert = None))]
fn cone_points(
    matrix: &PyStepMatrix,
    bound: i64,
    cert: Option<&PyConeCertificate>,
) -> PyResult<Vec<Vec<i64>>> {
    let cert = certificate(matrix, cert)?;
    let points = vecpart::cone_points(&matrix.0, &cert, bound).py_err()?;
    Ok(points.into_iter().map(LatticeVector::into_coords).collect())
}

/// `sum_x phi(x) xi^x` up to total degree `bound`.
#[pyfunction]
fn weight_series(phi: &PyWeightFunction, nvars: usize, bound: i64) -> PyResult<PyTruncatedSeries> {
    vecpart::weight_series(&phi.0, nvars, bound)
        .py_err()
        .map(PyTruncatedSeries)
}

/// Substitutes `xi_j = z^{alpha^j}`, keeping ell-degree at most `bound`.
#[pyfunction]
#[pyo3(signature = (series, matrix, bound, cert = None))]
fn substitute_monomial(
    series: &PyTruncatedSeries,
    matrix: &PyStepMatrix,
    bound: i64,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyTruncatedSeries> {
    let cert = certificate(matrix, cert)?;
    vecpart::substitute_monomial(&series.0, &matrix.0, &cert, bound)
        .py_err()
        .map(PyTruncatedSeries)
}

/// `1 / (1 - sum_j z^{alpha^j})`: counts of step sequences to each point.
#[pyfunction]
#[pyo3(signature = (matrix, bound, cert = None))]
fn geometric_inverse(
    matrix: &PyStepMatrix,
    bound: i64,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyTruncatedSeries> {
    let cert = certificate(matrix, cert)?;
    vecpart::geometric_inverse(&matrix.0, &cert, bound)
        .py_err()
        .map(PyTruncatedSeries)
}

#[pyfunction]
fn multinomial<'py>(py: Python<'py>, x: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &vecpart::multinomial(&vector(x)).py_err()?)
}

#[pyfunction]
#[pyo3(signature = (matrix, phi, c, bound, cert = None))]
fn verify_theorem1(
    matrix: &PyStepMatrix,
    phi: &PyWeightFunction,
    c: Vec<Bound<'_, PyAny>>,
    bound: i64,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyVerificationReport> {
    let cert = certificate(matrix, cert)?;
    report(vecpart::verify_theorem1(
        &matrix.0,
        &cert,
        &phi.0,
        &rationals(c)?,
        bound,
    ))
}

#[pyfunction]
fn verify_basic_recurrence(
    phi: &PyWeightFunction,
    nvars: usize,
    bound: i64,
) -> PyResult<PyVerificationReport> {
    report(vecpart::verify_basic_recurrence(&phi.0, nvars, bound))
}

/// `window` is `"shifted"` (default) or `"punctured"`.
#[pyfunction]
#[pyo3(signature = (matrix, phi, bound, window = "shifted", cert = None))]
fn verify_prop1(
    matrix: &PyStepMatrix,
    phi: &PyWeightFunction,
    bound: i64,
    window: &str,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyVerificationReport> {
    let window = match window {
        "shifted" => Prop1Window::ShiftedCone,
        "punctured" => Prop1Window::PuncturedCone,
        other => return Err(PyValueError::new_err(format!("unknown window {other:?}"))),
    };
    let cert = certificate(matrix, cert)?;
    report(vecpart::verify_prop1(
        &matrix.0, &cert, &phi.0, bound, window,
    ))
}

#[pyfunction]
#[pyo3(signature = (matrix, bound, cert = None))]
fn verify_prop2(
    matrix: &PyStepMatrix,
    bound: i64,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyVerificationReport> {
    let cert = certificate(matrix, cert)?;
    report(vecpart::verify_prop2(&matrix.0, &cert, bound))
}

#[pyfunction]
#[pyo3(signature = (matrix, c, mu, cert = None))]
fn verify_prop3(
    matrix: &PyStepMatrix,
    c: Vec<Bound<'_, PyAny>>,
    mu: Vec<i64>,
    cert: Option<&PyConeCertificate>,
) -> PyResult<PyVerificationReport> {
    let cert = certificate(matrix, cert)?;
    report(vecpart::verify_prop3(
        &matrix.0,
        &cert,
        &rationals(c)?,
        &vector(mu),
    ))
}

#[pyfunction]
fn verify_cb_multidim(c: Vec<Bound<'_, PyAny>>, mu: Vec<i64>) -> PyResult<PyVerificationReport> {
    report(vecpart::verify_cb_multidim(&rationals(c)?, &vector(mu)))
}

#[pyfunction]
fn verify_cb_1d(
    c1: &Bound<'_, PyAny>,
    c2: &Bound<'_, PyAny>,
    mu1: i64,
    mu2: i64,
) -> PyResult<PyVerificationReport> {
    report(vecpart::verify_cb_1d(
        &rational(c1)?,
        &rational(c2)?,
        mu1,
        mu2,
    ))
}

/// Exact vector partition functions over pointed lattice cones.
#[pymodule(name = "vecpart")]
mod vecpart_module {
    #[pymodule_export]
    use super::{
        certify_pointed, cone_points, enumerate_solutions, generalized_vp, geometric_inverse,
        multinomial, substitute_monomial, vector_partition, verify_basic_recurrence, verify_cb_1d,
        verify_cb_multidim, verify_prop1, verify_prop2, verify_prop3, verify_theorem1,
        weight_series, NotPointedError, PreconditionError, PyConeCertificate, PyStepMatrix,
        PyTruncatedSeries, PyVerificationReport, PyWeightFunction,
    };
}
