use std::str::FromStr;

use gbsiso::combinatorics::{orbits, orbits_up_to, DetectionEvent, Orbit};
use gbsiso::graphs::{emit_graph6, parse_graph6};
use gbsiso::hafnian::hafnian_fast;
use gbsiso::invariants::{self, compare_certificates};
use gbsiso::{GbsEncoding, SymmetricMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts `int`, `fractions.Fraction`, or a string such as `"1/7"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(s) = obj.extract::<String>() {
        return BigRational::from_str(s.trim()).map_err(|_| value_error(format!("invalid rational {s:?}")));
    }
    if let (Ok(n), Ok(d)) = (obj.getattr("numerator"), obj.getattr("denominator")) {
        let (n, d): (BigInt, BigInt) = (n.extract()?, d.extract()?);
        if d == BigInt::from(0) {
            return Err(value_error("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    Err(PyTypeError::new_err("expected int, Fraction or str"))
}

fn optional_rational(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Option<BigRational>> {
    obj.map(rational).transpose()
}

/// A simple undirected graph.
#[pyclass(name = "Graph", module = "pygbsiso", frozen, skip_from_py_object)]
struct PyGraph {
    inner: gbsiso::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (order, edges, label=None))]
    fn new(order: usize, edges: Vec<(usize, usize)>, label: Option<String>) -> PyResult<Self> {
        let mut g = gbsiso::Graph::from_edges(order, &edges).map_err(value_error)?;
        g.set_label(label);
        Ok(Self { inner: g })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_graph6(text.trim()).map_err(value_error)?,
        })
    }

    fn to_graph6(&self) -> String {
        emit_graph6(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.inner.label().map(str::to_owned)
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, edges={})", self.inner.order(), self.inner.edge_count())
    }
}

fn encoding(g: &PyGraph, c: Option<&Bound<'_, PyAny>>, k: Option<&Bound<'_, PyAny>>) -> PyResult<GbsEncoding> {
    let k = optional_rational(k)?.unwrap_or_else(|| BigRational::from_integer(0.into()));
    gbsiso::encode(&g.inner, optional_rational(c)?, k).map_err(value_error)
}

/// Exact hafnian of a symmetric integer matrix given as a list of rows.
#[pyfunction]
fn hafnian(rows: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    let m = SymmetricMatrix::from_rows(rows).map_err(value_error)?;
    hafnian_fast(&m).map_err(value_error)
}

/// Orbits of `total` photons on `modes` modes as `(representative, size, forced_zero)`.
#[pyfunction]
fn orbit_list(total: u64, modes: usize) -> PyResult<Vec<(Vec<u32>, BigInt, bool)>> {
    Ok(orbits(total, modes)
        .map_err(value_error)?
        .into_iter()
        .map(|o| {
            (
                o.representative().counts().to_vec(),
                BigInt::from(o.size().clone()),
                o.is_forced_zero(),
            )
        })
        .collect())
}

/// Vacuum probability of the encoded graph.
#[pyfunction]
#[pyo3(signature = (graph, c=None, k=None))]
fn prefactor(graph: &PyGraph, c: Option<&Bound<'_, PyAny>>, k: Option<&Bound<'_, PyAny>>) -> PyResult<f64> {
    Ok(encoding(graph, c, k)?.prefactor())
}

/// Probability of one detection event; returns `(hafnian, probability)`.
#[pyfunction]
#[pyo3(signature = (graph, event, c=None, k=None))]
fn event_probability(
    graph: &PyGraph,
    event: Vec<u32>,
    c: Option<&Bound<'_, PyAny>>,
    k: Option<&Bound<'_, PyAny>>,
) -> PyResult<(BigInt, f64)> {
    let e = encoding(graph, c, k)?;
    let r = gbsiso::gbs::event_probability(&e, &DetectionEvent::new(event)).map_err(value_error)?;
    Ok((r.hafnian, r.probability))
}

fn schedule(modes: usize, max_photons: u64) -> PyResult<Vec<Orbit>> {
    orbits_up_to(max_photons, modes, true).map_err(value_error)
}

/// Certificate JSON over every orbit with at most `max_photons` photons.
#[pyfunction]
#[pyo3(signature = (graph, max_photons=4, c=None, k=None, budget=None))]
fn certify(
    py: Python<'_>,
    graph: &PyGraph,
    max_photons: u64,
    c: Option<&Bound<'_, PyAny>>,
    k: Option<&Bound<'_, PyAny>>,
    budget: Option<u64>,
) -> PyResult<String> {
    let e = encoding(graph, c, k)?;
    let orbits = schedule(e.modes(), max_photons)?;
    let cert = py
        .detach(|| invariants::certify(&e, &orbits, budget))
        .map_err(value_error)?;
    Ok(cert.to_json())
}

/// Compares two graphs of equal order. Without `c`, both use the scaling
/// chosen for the graph with the larger spectral norm.
#[pyfunction]
#[pyo3(signature = (a, b, max_photons=4, c=None, k=None))]
fn compare<'py>(
    py: Python<'py>,
    a: &PyGraph,
    b: &PyGraph,
    max_photons: u64,
    c: Option<&Bound<'py, PyAny>>,
    k: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    if a.inner.order() != b.inner.order() {
        return Err(value_error("graphs must have the same order"));
    }
    let k_value = optional_rational(k)?.unwrap_or_else(|| BigRational::from_integer(0.into()));
    let c_value = match optional_rational(c)? {
        Some(c) => c,
        None => {
            let norm = gbsiso::graphs::spectrum(&a.inner)
                .spectral_norm
                .max(gbsiso::graphs::spectrum(&b.inner).spectral_norm);
            gbsiso::gbs::default_scaling(norm, &k_value)
        }
    };
    let e1 = gbsiso::encode(&a.inner, Some(c_value.clone()), k_value.clone()).map_err(value_error)?;
    let e2 = gbsiso::encode(&b.inner, Some(c_value), k_value).map_err(value_error)?;
    let orbits = schedule(e1.modes(), max_photons)?;
    let report = py
        .detach(|| -> gbsiso::Result<_> {
            let c1 = invariants::certify(&e1, &orbits, None)?;
            let c2 = invariants::certify(&e2, &orbits, None)?;
            compare_certificates(&c1, &c2)
        })
        .map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("verdict", report.verdict.to_string())?;
    out.set_item(
        "threshold_orbit",
        report.threshold_orbit.map(|o| o.representative().counts().to_vec()),
    )?;
    out.set_item(
        "separating_criterion",
        report.separating_criterion.map(|c| c.to_string()),
    )?;
    Ok(out)
}

#[pymodule]
fn pygbsiso(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(hafnian, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_list, m)?)?;
    m.add_function(wrap_pyfunction!(prefactor, m)?)?;
    m.add_function(wrap_pyfunction!(event_probability, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
