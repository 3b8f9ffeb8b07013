//! Python bindings: `import blaschke`.

use blaschke_core::extremal::{classify_extremal, ExtremalProduct as CoreExtremal};
use blaschke_core::hypergeo::{extremal_numerator, hyper_poly as core_hyper_poly};
use blaschke_core::io::{product_from_json, product_to_json};
use blaschke_core::rational::{format_rational, from_f64, parse_rational, to_f64};
use blaschke_core::{BlaschkeProduct as CoreProduct, Error, ExtremaReport, Rational, Tolerances};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyInt, PyString};

fn py_err(e: Error) -> PyErr {
    match e.exit_code() {
        1 => PyValueError::new_err(e.to_string()),
        2 => PyArithmeticError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Accepts `"p/q"` or decimal strings, ints and floats.
fn rational_arg(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if value.is_instance_of::<PyString>() {
        return parse_rational(&value.extract::<String>()?).map_err(py_err);
    }
    if value.is_instance_of::<PyInt>() {
        return Ok(Rational::from_integer(value.extract::<i64>()?.into()));
    }
    if value.is_instance_of::<PyFloat>() {
        return from_f64(value.extract::<f64>()?).map_err(py_err);
    }
    Err(PyValueError::new_err("expected a str, int or float"))
}

fn coeff_strings(coeffs: &[Rational]) -> Vec<String> {
    coeffs.iter().map(format_rational).collect()
}

fn extrema_dict<'py>(py: Python<'py>, e: &ExtremaReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("M", e.max)?;
    d.set_item("m", e.min)?;
    d.set_item("argmax", e.argmax)?;
    d.set_item("argmin", e.argmin)?;
    d.set_item("mean", e.mean)?;
    d.set_item("samples", e.samples)?;
    Ok(d)
}

/// Finite Blaschke product on the unit disk.
#[pyclass(name = "BlaschkeProduct", module = "blaschke", frozen)]
struct PyProduct {
    inner: CoreProduct,
}

#[pymethods]
impl PyProduct {
    #[new]
    #[pyo3(signature = (zeros, alpha = Complex64::new(1.0, 0.0)))]
    fn new(zeros: Vec<Complex64>, alpha: Complex64) -> PyResult<Self> {
        CoreProduct::from_zeros(zeros, alpha).map(|inner| Self { inner }).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        product_from_json(text).map(|inner| Self { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        product_to_json(&self.inner)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn zeros(&self) -> Vec<Complex64> {
        self.inner.zeros().to_vec()
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.inner.alpha()
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.inner.eval(z)
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        self.inner.derivative(z)
    }

    /// `|B'(e^{it})|`
    fn deriv_modulus(&self, t: f64) -> f64 {
        self.inner.deriv_modulus_at(t)
    }

    #[pyo3(signature = (samples = 8192))]
    fn profile(&self, samples: usize) -> Vec<(f64, f64)> {
        self.inner.profile(samples)
    }

    #[pyo3(signature = (samples = 0))]
    fn extrema<'py>(&self, py: Python<'py>, samples: usize) -> PyResult<Bound<'py, PyDict>> {
        let e = py.detach(|| self.inner.extrema(samples)).map_err(py_err)?;
        extrema_dict(py, &e)
    }

    #[pyo3(signature = (lambda_arg = 0.0, lifted = false))]
    fn preimages(&self, lambda_arg: f64, lifted: bool) -> PyResult<Vec<Complex64>> {
        let lambda = Complex64::from_polar(1.0, lambda_arg);
        self.inner
            .preimages(lambda, lifted, &Tolerances::default())
            .map(|s| s.points)
            .map_err(py_err)
    }

    fn is_extremal(&self) -> PyResult<bool> {
        classify_extremal(&self.inner, 1e-8).map(|c| c.is_extremal).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.degree()
    }

    fn __repr__(&self) -> String {
        format!("BlaschkeProduct(degree={}, alpha={})", self.inner.degree(), self.inner.alpha())
    }
}

/// Extremal product together with its exact numerator.
#[pyclass(name = "ExtremalProduct", module = "blaschke", frozen)]
struct PyExtremal {
    inner: CoreExtremal,
}

#[pymethods]
impl PyExtremal {
    #[getter]
    fn product(&self) -> PyProduct {
        PyProduct {
            inner: self.inner.product.clone(),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.spec.n
    }

    #[getter]
    fn nu(&self) -> String {
        format_rational(&self.inner.spec.nu)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.spec.kind.name()
    }

    #[getter]
    fn kappa(&self) -> String {
        format_rational(&self.inner.spec.kappa)
    }

    #[getter]
    fn predicted(&self) -> (f64, f64) {
        (to_f64(&self.inner.spec.predicted_max), to_f64(&self.inner.spec.predicted_min))
    }

    #[getter]
    fn numerator(&self) -> Vec<String> {
        coeff_strings(self.inner.numerator.coeffs())
    }

    #[getter]
    fn denominator(&self) -> Vec<String> {
        coeff_strings(self.inner.denominator().coeffs())
    }

    fn __repr__(&self) -> String {
        format!("ExtremalProduct(n={}, nu={})", self.n(), self.nu())
    }
}

/// Coefficients of `F(-n, b; c; z)` as exact `"p/q"` strings.
#[pyfunction]
fn hyper_poly(n: usize, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    let h = core_hyper_poly(n, rational_arg(b)?, rational_arg(c)?).map_err(py_err)?;
    Ok(coeff_strings(h.poly.coeffs()))
}

/// Numerator coefficients of the degree-`n` extremal product.
#[pyfunction]
fn extremal_numerator_coeffs(n: usize, nu: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    let p = extremal_numerator(n, &rational_arg(nu)?).map_err(py_err)?;
    Ok(coeff_strings(p.coeffs()))
}

#[pyfunction]
fn extremal_product(n: usize, nu: &Bound<'_, PyAny>) -> PyResult<PyExtremal> {
    let nu = rational_arg(nu)?;
    blaschke_core::extremal_product(n, &nu)
        .map(|inner| PyExtremal { inner })
        .map_err(py_err)
}

/// `(M, m)` as exact `"p/q"` strings.
#[pyfunction]
fn predicted_extrema(n: usize, nu: &Bound<'_, PyAny>) -> PyResult<(String, String)> {
    let (max, min) = blaschke_core::predicted_extrema(n, &rational_arg(nu)?).map_err(py_err)?;
    Ok((format_rational(&max), format_rational(&min)))
}

#[pyfunction]
#[pyo3(name = "feasibility")]
fn py_feasibility<'py>(py: Python<'py>, n: usize, m: f64, big_m: f64) -> PyResult<Bound<'py, PyDict>> {
    let f = blaschke_core::feasibility(n, m, big_m);
    let d = PyDict::new(py);
    d.set_item("n", f.n)?;
    d.set_item("m", f.min)?;
    d.set_item("M", f.max)?;
    d.set_item("left_slack", f.left_slack)?;
    d.set_item("right_slack", f.right_slack)?;
    d.set_item("feasible", f.feasible)?;
    d.set_item("violation", f.violation)?;
    Ok(d)
}

/// Product of degree `n` with `m(B) = m` and `M(B) = big_m`.
#[pyfunction]
fn construct<'py>(py: Python<'py>, n: usize, m: f64, big_m: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = py.detach(|| blaschke_core::construct(n, m, big_m)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("case", c.case.number())?;
    d.set_item("product", PyProduct { inner: c.product })?;
    d.set_item("achieved", extrema_dict(py, &c.achieved)?)?;
    d.set_item("numerator", c.numerator.map(|p| coeff_strings(p.coeffs())))?;
    d.set_item("t", c.homotopy.as_ref().map(|h| h.t))?;
    d.set_item("lambda", c.homotopy.as_ref().map(|h| h.lambda))?;
    Ok(d)
}

#[pymodule]
fn blaschke(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProduct>()?;
    m.add_class::<PyExtremal>()?;
    m.add_function(wrap_pyfunction!(hyper_poly, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_numerator_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_product, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_extrema, m)?)?;
    m.add_function(wrap_pyfunction!(py_feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    Ok(())
}
