//! Python bindings for `itroot-core`.
//!
//! Polynomials carry their coefficient mode (`"exact"` over Q(w) or
//! `"approx"` over complex doubles); field elements cross the boundary as
//! strings in the same syntax the parser accepts.

use itroot_core::linear::{linear_iterate_closed, linear_root as core_linear_root, FamilyKind};
use itroot_core::parse::{parse_element, parse_polynomial};
use itroot_core::quartic::{self, analyze, curve_point, triple_roots};
use itroot_core::solver::{self, SolveRequest};
use itroot_core::{
    field, normalize, ApproxComplex, Eisenstein, Error, Field, Mode, Polynomial, Tolerance,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(itroot, ParseError, PyValueError);
create_exception!(itroot, ItrootError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(p) => ParseError::new_err(p.to_string()),
        other => ItrootError::new_err(other.to_string()),
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(PyValueError::new_err)
}

fn tolerance(tol: f64) -> PyResult<Tolerance> {
    if tol.is_finite() && tol > 0.0 {
        Ok(Tolerance::with_rel(tol))
    } else {
        Err(PyValueError::new_err("tol must be a positive number"))
    }
}

/// `repr` of an optional string, Python style.
fn repr_opt(s: &Option<String>) -> String {
    s.as_ref().map_or_else(|| "None".into(), |v| format!("'{v}'"))
}

fn repr_bool(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

fn element<F: Field>(s: &str) -> PyResult<F> {
    parse_element(s).map_err(|e| ParseError::new_err(e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
enum Inner {
    Exact(Polynomial<Eisenstein>),
    Approx(Polynomial<ApproxComplex>),
}

/// A univariate polynomial in `z`.
#[pyclass(name = "Poly", module = "itroot", frozen, skip_from_py_object)]
#[derive(Clone, Debug)]
pub struct PyPoly {
    inner: Inner,
}

impl From<Polynomial<Eisenstein>> for PyPoly {
    fn from(p: Polynomial<Eisenstein>) -> Self {
        PyPoly { inner: Inner::Exact(p) }
    }
}

impl From<Polynomial<ApproxComplex>> for PyPoly {
    fn from(p: Polynomial<ApproxComplex>) -> Self {
        PyPoly { inner: Inner::Approx(p) }
    }
}

/// Runs `$body` with `$p` bound to the polynomial of either mode.
macro_rules! with_poly {
    ($poly:expr, $p:ident => $body:expr) => {
        match &$poly.inner {
            Inner::Exact($p) => $body,
            Inner::Approx($p) => $body,
        }
    };
}

impl PyPoly {
    fn same_mode<'a>(&'a self, other: &'a PyPoly) -> PyResult<(&'a Inner, &'a Inner)> {
        match (&self.inner, &other.inner) {
            (a @ Inner::Exact(_), b @ Inner::Exact(_)) | (a @ Inner::Approx(_), b @ Inner::Approx(_)) => Ok((a, b)),
            _ => Err(PyValueError::new_err("polynomials have different modes")),
        }
    }
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, mode = "exact"))]
    fn new(text: &str, mode: &str) -> PyResult<Self> {
        let err = |e: itroot_core::ParseError| ParseError::new_err(e.to_string());
        Ok(match parse_mode(mode)? {
            Mode::Exact => parse_polynomial::<Eisenstein>(text).map_err(err)?.into(),
            Mode::Approx => parse_polynomial::<ApproxComplex>(text).map_err(err)?.into(),
        })
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner {
            Inner::Exact(_) => "exact",
            Inner::Approx(_) => "approx",
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        with_poly!(self, p => p.degree())
    }

    /// Coefficients as strings, highest degree first.
    fn coefficients(&self) -> Vec<String> {
        with_poly!(self, p => p.coeffs().iter().rev().map(|c| c.to_string()).collect())
    }

    /// Coefficients as Python complex numbers, highest degree first.
    fn complex_coefficients(&self) -> Vec<complex_out::C64> {
        with_poly!(self, p => p.coeffs().iter().rev().map(|c| {
            let z = c.embed();
            complex_out::C64(z.re, z.im)
        }).collect())
    }

    fn iterate(&self, n: u32) -> PyPoly {
        with_poly!(self, p => p.iterate(n).into())
    }

    /// `self(inner(z))`.
    fn compose(&self, inner: &PyPoly) -> PyResult<PyPoly> {
        Ok(match self.same_mode(inner)? {
            (Inner::Exact(f), Inner::Exact(g)) => f.compose(g).into(),
            (Inner::Approx(f), Inner::Approx(g)) => f.compose(g).into(),
            _ => unreachable!(),
        })
    }

    /// Value at a point given in the element syntax, as a string.
    fn evaluate(&self, at: &str) -> PyResult<String> {
        Ok(with_poly!(self, p => p.evaluate(&element(at)?).to_string()))
    }

    /// `(monic conjugate, a, b)` with the conjugating map `a*z + b`.
    fn normalize(&self) -> PyResult<(PyPoly, String, String)> {
        with_poly!(self, p => {
            let (g, map) = normalize(p).map_err(to_py)?;
            Ok((g.into(), map.a().to_string(), map.b().to_string()))
        })
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        with_poly!(self, p => p.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?}, mode={:?})", self.__str__(), self.mode())
    }
}

/// Conversion of `(re, im)` pairs into Python `complex`.
mod complex_out {
    use pyo3::prelude::*;
    use pyo3::types::PyComplex;

    pub struct C64(pub f64, pub f64);

    impl<'py> IntoPyObject<'py> for C64 {
        type Target = PyComplex;
        type Output = Bound<'py, PyComplex>;
        type Error = std::convert::Infallible;

        fn into_pyobject(self, py: Python<'py>) -> Result<Self::Output, Self::Error> {
            Ok(PyComplex::from_doubles(py, self.0, self.1))
        }
    }
}

/// Square roots of a quartic.
#[pyclass(module = "itroot", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct Classification {
    count: usize,
    roots: Vec<PyPoly>,
    beta: Option<String>,
    uncertain: bool,
}

#[pymethods]
impl Classification {
    fn __repr__(&self) -> String {
        format!(
            "Classification(count={}, beta={}, uncertain={})",
            self.count,
            repr_opt(&self.beta),
            repr_bool(self.uncertain)
        )
    }
}

fn classify_poly<F: Field>(g: &Polynomial<F>, tol: Tolerance) -> PyResult<Classification>
where
    PyPoly: From<Polynomial<F>>,
{
    let a = analyze(g, tol).map_err(to_py)?;
    Ok(Classification {
        count: a.classification.count(),
        roots: a.roots.into_iter().map(PyPoly::from).collect(),
        beta: a.classification.on_curve.map(|b| b.to_string()),
        uncertain: a.classification.uncertain,
    })
}

/// All quadratic square roots of a quartic, transported back through its
/// normalization.
#[pyfunction]
#[pyo3(signature = (g, tol = 1e-9))]
fn sqrt_all(g: &PyPoly, tol: f64) -> PyResult<Classification> {
    let tol = tolerance(tol)?;
    match &g.inner {
        Inner::Exact(p) => classify_poly(p, tol),
        Inner::Approx(p) => classify_poly(p, tol),
    }
}

/// The second iterate of `z^2 + a1*z + a0`, as a polynomial.
#[pyfunction]
#[pyo3(signature = (a1, a0, mode = "exact"))]
fn phi(a1: &str, a0: &str, mode: &str) -> PyResult<PyPoly> {
    Ok(match parse_mode(mode)? {
        Mode::Exact => quartic::phi::<Eisenstein>(&element(a1)?, &element(a0)?).to_polynomial().into(),
        Mode::Approx => quartic::phi::<ApproxComplex>(&element(a1)?, &element(a0)?).to_polynomial().into(),
    })
}

fn curve_of<F: Field>(beta: &str) -> PyResult<(PyPoly, Vec<PyPoly>)>
where
    PyPoly: From<Polynomial<F>>,
{
    let b: F = element(beta)?;
    let roots = triple_roots(&b).iter().map(|r| r.to_polynomial().into()).collect();
    Ok((curve_point(&b).to_polynomial().into(), roots))
}

/// The curve point with parameter `beta` and its three square roots.
#[pyfunction]
#[pyo3(signature = (beta, mode = "exact"))]
fn curve(beta: &str, mode: &str) -> PyResult<(PyPoly, Vec<PyPoly>)> {
    match parse_mode(mode)? {
        Mode::Exact => curve_of::<Eisenstein>(beta),
        Mode::Approx => curve_of::<ApproxComplex>(beta),
    }
}

/// Outcome of [`solve`].
#[pyclass(module = "itroot", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct SolveResult {
    roots: Vec<PyPoly>,
    residuals: Vec<f64>,
    minimal_orders: Vec<u32>,
    free_intercept_slopes: Vec<String>,
    complete: bool,
    obstruction: Option<String>,
}

#[pymethods]
impl SolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(count={}, complete={}, obstruction={})",
            self.roots.len(),
            repr_bool(self.complete),
            repr_opt(&self.obstruction)
        )
    }
}

fn solve_poly<F: Field>(g: &Polynomial<F>, e: u32, r: u32, tol: Tolerance) -> PyResult<SolveResult>
where
    PyPoly: From<Polynomial<F>>,
{
    let res = solver::solve(&SolveRequest { g: g.clone(), e, r, tol }).map_err(to_py)?;
    Ok(SolveResult {
        residuals: res.roots.iter().map(|x| x.residual).collect(),
        minimal_orders: res.roots.iter().map(|x| x.minimal_order).collect(),
        roots: res.roots.into_iter().map(|x| x.poly.into()).collect(),
        free_intercept_slopes: res.free_intercept_slopes.iter().map(|c| c.to_string()).collect(),
        complete: res.complete,
        obstruction: res.obstruction.map(|o| o.to_string()),
    })
}

/// Roots `f` of degree `e` with `f^r = g`.
#[pyfunction]
#[pyo3(signature = (g, e, r, tol = 1e-9))]
fn solve(g: &PyPoly, e: u32, r: u32, tol: f64) -> PyResult<SolveResult> {
    let tol = tolerance(tol)?;
    match &g.inner {
        Inner::Exact(p) => solve_poly(p, e, r, tol),
        Inner::Approx(p) => solve_poly(p, e, r, tol),
    }
}

/// Max coefficient difference between `f^r` and `g`.
#[pyfunction]
fn residual(f: &PyPoly, r: u32, g: &PyPoly) -> PyResult<f64> {
    Ok(match f.same_mode(g)? {
        (Inner::Exact(f), Inner::Exact(g)) => solver::residual(f, r, g),
        (Inner::Approx(f), Inner::Approx(g)) => solver::residual(f, r, g),
        _ => unreachable!(),
    })
}

/// Linear roots of `a*z + b`.
#[pyclass(module = "itroot", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct LinearRoots {
    kind: &'static str,
    roots: Vec<PyPoly>,
    minimal_orders: Vec<u32>,
    free_intercept_slopes: Vec<String>,
    complete: bool,
}

#[pymethods]
impl LinearRoots {
    fn __repr__(&self) -> String {
        format!("LinearRoots(kind={:?}, count={})", self.kind, self.roots.len())
    }
}

fn linear_roots_of<F: Field>(a: &str, b: &str, r: u32, tol: Tolerance) -> PyResult<LinearRoots>
where
    PyPoly: From<Polynomial<F>>,
{
    let fam = core_linear_root::<F>(&element(a)?, &element(b)?, r, tol).map_err(to_py)?;
    Ok(LinearRoots {
        kind: match fam.kind() {
            FamilyKind::Finite => "finite",
            FamilyKind::Parametric => "parametric",
            FamilyKind::None => "none",
        },
        minimal_orders: fam.roots.iter().map(|x| x.minimal_order).collect(),
        roots: fam.roots.iter().map(|x| x.map.as_polynomial().into()).collect(),
        free_intercept_slopes: fam.free_intercept_slopes.iter().map(|c| c.to_string()).collect(),
        complete: fam.complete,
    })
}

#[pyfunction]
#[pyo3(signature = (a, b, r, mode = "exact", tol = 1e-9))]
fn linear_root(a: &str, b: &str, r: u32, mode: &str, tol: f64) -> PyResult<LinearRoots> {
    let tol = tolerance(tol)?;
    match parse_mode(mode)? {
        Mode::Exact => linear_roots_of::<Eisenstein>(a, b, r, tol),
        Mode::Approx => linear_roots_of::<ApproxComplex>(a, b, r, tol),
    }
}

/// `(a*z + b)^n` in closed form.
#[pyfunction]
#[pyo3(signature = (a, b, n, mode = "exact"))]
fn linear_iterate(a: &str, b: &str, n: u32, mode: &str) -> PyResult<PyPoly> {
    Ok(match parse_mode(mode)? {
        Mode::Exact => linear_iterate_closed::<Eisenstein>(&element(a)?, &element(b)?, n).into(),
        Mode::Approx => linear_iterate_closed::<ApproxComplex>(&element(a)?, &element(b)?, n).into(),
    })
}

/// The `n`-th roots of unity available in the mode, and whether all `n`
/// were found.
#[pyfunction]
#[pyo3(signature = (n, mode = "exact"))]
fn roots_of_unity(n: u32, mode: &str) -> PyResult<(Vec<String>, bool)> {
    fn strs<F: Field>(n: u32) -> PyResult<(Vec<String>, bool)> {
        let r = field::roots_of_unity::<F>(n).map_err(to_py)?;
        Ok((r.roots.iter().map(|x| x.to_string()).collect(), r.complete))
    }
    match parse_mode(mode)? {
        Mode::Exact => strs::<Eisenstein>(n),
        Mode::Approx => strs::<ApproxComplex>(n),
    }
}

/// Named results of the symbolic identity checks.
#[pyfunction]
fn verify() -> Vec<(&'static str, bool)> {
    itroot_core::multipoly::verify_all()
}

#[pymodule]
fn itroot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<Classification>()?;
    m.add_class::<SolveResult>()?;
    m.add_class::<LinearRoots>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_all, m)?)?;
    m.add_function(wrap_pyfunction!(curve, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(linear_root, m)?)?;
    m.add_function(wrap_pyfunction!(linear_iterate, m)?)?;
    m.add_function(wrap_pyfunction!(roots_of_unity, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ItrootError", m.py().get_type::<ItrootError>())?;
    Ok(())
}
