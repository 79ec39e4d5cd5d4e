//! Python bindings: presentations, normalized elements, the calculus
//! operations and the JSON check reports.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use superalg::algebra::Element as CoreElement;
use superalg::calculus::{self, InvolutionSpec};
use superalg::cli;
use superalg::error::Error;
use superalg::presentations::{self, enumerate_basis, Presentation as CorePresentation};

create_exception!(superalg, SuperalgError, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) | Error::UnknownPresentation(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => SuperalgError::new_err(other.to_string()),
    }
}

/// A finitely presented superalgebra with its rewriting system.
#[pyclass(frozen, module = "superalg")]
struct Presentation {
    inner: Arc<CorePresentation>,
}

#[pymethods]
impl Presentation {
    /// Look up a built-in presentation by id, or load a `.pres` file.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Presentation { inner: presentations::resolve(name).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// Generator names in the monomial order.
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.table().generators().iter().map(|g| g.name.clone()).collect()
    }

    /// Defining relations as `lhs -> rhs` strings.
    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.rules.defining_rules().iter().map(|r| r.display()).collect()
    }

    /// Parse and normalize an expression.
    fn element(&self, text: &str) -> PyResult<Element> {
        let e = self.inner.parse(text).map_err(err)?;
        Element::normalized(&self.inner, &e)
    }

    /// Normal form of an expression, as text.
    fn normalize(&self, text: &str) -> PyResult<String> {
        Ok(self.element(text)?.value.to_string())
    }

    /// Normal-form words of the given degree.
    fn basis(&self, degree: usize) -> Vec<String> {
        enumerate_basis(&self.inner, degree)
            .iter()
            .map(|w| w.display(self.inner.table()).to_string())
            .collect()
    }

    /// Whether all critical pairs up to `max_len` letters resolve.
    #[pyo3(signature = (max_len = 3))]
    fn is_confluent(&self, max_len: usize) -> PyResult<bool> {
        Ok(presentations::confluence(&self.inner, max_len).map_err(err)?.passed())
    }

    fn __repr__(&self) -> String {
        format!("Presentation('{}')", self.inner.name)
    }
}

/// An element in normal form. Arithmetic renormalizes.
#[pyclass(frozen, module = "superalg")]
struct Element {
    presentation: Arc<CorePresentation>,
    value: CoreElement,
}

impl Element {
    fn normalized(p: &Arc<CorePresentation>, e: &CoreElement) -> PyResult<Self> {
        Ok(Element { presentation: p.clone(), value: p.normalize(e).map_err(err)? })
    }

    fn same_algebra(&self, other: &Element) -> PyResult<()> {
        if Arc::ptr_eq(&self.presentation, &other.presentation)
            || self.presentation.name == other.presentation.name
        {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "elements of `{}` and `{}` cannot be combined",
                self.presentation.name, other.presentation.name
            )))
        }
    }

    fn combine(
        &self,
        other: &Element,
        op: fn(&CoreElement, &CoreElement) -> superalg::error::Result<CoreElement>,
    ) -> PyResult<Element> {
        self.same_algebra(other)?;
        let e = op(&self.value, &other.value).map_err(err)?;
        Element::normalized(&self.presentation, &e)
    }
}

#[pymethods]
impl Element {
    fn __add__(&self, other: &Element) -> PyResult<Element> {
        self.combine(other, CoreElement::try_add)
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        self.combine(other, |a, b| a.try_add(&-b))
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        self.combine(other, CoreElement::try_mul)
    }

    fn __neg__(&self) -> Element {
        Element { presentation: self.presentation.clone(), value: -&self.value }
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.presentation.name == other.presentation.name && self.value == other.value
    }

    fn __str__(&self) -> String {
        self.value.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}', '{}')", self.presentation.name, self.value)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `(coefficient, word)` pairs in word order.
    fn terms(&self) -> Vec<(String, String)> {
        let table = self.value.table();
        self.value
            .terms()
            .iter()
            .map(|(w, c)| (c.to_string(), w.display(table).to_string()))
            .collect()
    }

    #[getter]
    fn algebra(&self) -> String {
        self.presentation.name.clone()
    }
}

fn build(id: &str) -> PyResult<Arc<CorePresentation>> {
    presentations::build(id).map_err(err)
}

/// Exterior derivative of a function on the superspace, in the de Rham algebra.
#[pyfunction]
fn diff(expr: &str) -> PyResult<String> {
    let p = build("derham_h")?;
    let f = p.parse(expr).map_err(err)?;
    Ok(calculus::differentiate(&f).map_err(err)?.to_string())
}

/// Partial derivative with respect to `x`, `th1` or `th2`.
#[pyfunction]
fn partial(var: &str, expr: &str) -> PyResult<String> {
    let p = build("weyl_h")?;
    let f = p.parse(expr).map_err(err)?;
    Ok(calculus::partial(var, &f).map_err(err)?.to_string())
}

/// Image under the star involution of the given algebra.
#[pyfunction]
#[pyo3(signature = (expr, algebra = "derham_h"))]
fn star(expr: &str, algebra: &str) -> PyResult<String> {
    let p = build(algebra)?;
    let spec = InvolutionSpec::star(algebra).map_err(err)?;
    let f = p.parse(expr).map_err(err)?;
    Ok(calculus::star_apply(&f, &p, &spec).map_err(err)?.to_string())
}

fn report(py: Python<'_>, args: Vec<String>) -> PyResult<Py<PyAny>> {
    let mut full = vec!["superalg".to_string()];
    full.extend(args);
    full.extend(["--format".to_string(), "json".to_string()]);
    let out = cli::run(full);
    if out.stdout.trim().is_empty() {
        return Err(SuperalgError::new_err(out.stderr.trim().to_string()));
    }
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (out.stdout,))?.unbind())
}

/// Run a named check and return its report as a dict.
#[pyfunction]
#[pyo3(signature = (kind, algebra = None, degree = None, trials = None, seed = 0, variant = None))]
fn check(
    py: Python<'_>,
    kind: &str,
    algebra: Option<&str>,
    degree: Option<usize>,
    trials: Option<usize>,
    seed: u64,
    variant: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let mut args = vec!["check".to_string(), kind.to_string(), "--seed".to_string(), seed.to_string()];
    if let Some(a) = algebra {
        args.extend(["--algebra".to_string(), a.to_string()]);
    }
    if let Some(d) = degree {
        args.extend(["--degree".to_string(), d.to_string()]);
    }
    if let Some(t) = trials {
        args.extend(["--trials".to_string(), t.to_string()]);
    }
    if let Some(v) = variant {
        args.extend(["--variant".to_string(), v.to_string()]);
    }
    report(py, args)
}

/// Contract the q-deformed presentations and compare with the targets.
/// With no targets, every target and the duality transport are run.
#[pyfunction]
#[pyo3(signature = (targets = Vec::new(), trials = 50, seed = 0))]
fn contract(py: Python<'_>, targets: Vec<String>, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let mut args = vec!["contract".to_string()];
    args.extend(targets);
    args.extend(["--trials".to_string(), trials.to_string(), "--seed".to_string(), seed.to_string()]);
    report(py, args)
}

/// Run the command-line interface and return `(code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let mut full = vec!["superalg".to_string()];
    full.extend(args);
    let out = cli::run(full);
    (out.code, out.stdout, out.stderr)
}

/// Ids of the built-in presentations.
#[pyfunction]
fn builtin() -> Vec<&'static str> {
    presentations::BUILTIN.to_vec()
}

#[pymodule]
#[pyo3(name = "superalg")]
fn superalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SuperalgError", m.py().get_type::<SuperalgError>())?;
    m.add_class::<Presentation>()?;
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(diff, m)?)?;
    m.add_function(wrap_pyfunction!(partial, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    Ok(())
}
