//! Python bindings for `nbhdcx`.
//!
//! Structured results (homology, certificates, reports, survey records) come
//! back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

use nbhdcx::asymptotics;
use nbhdcx::certificates;
use nbhdcx::complex;
use nbhdcx::experiments::{self, ExperimentConfig};
use nbhdcx::graph::{self, GnpParams, NamedGraph};
use nbhdcx::homology::{self as hom, Coefficients};
use nbhdcx::{Caps, Error};

create_exception!(nbhdcx_py, CapExceeded, PyRuntimeError, "A work cap was exceeded.");

fn err(e: Error) -> PyErr {
    match e {
        Error::Resource { .. } => CapExceeded::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

fn coefficients(name: &str) -> PyResult<Coefficients> {
    match name {
        "z" => Ok(Coefficients::Z),
        "f2" => Ok(Coefficients::F2),
        "both" => Ok(Coefficients::Both),
        other => Err(PyValueError::new_err(format!(
            "coefficients must be 'z', 'f2' or 'both', not {other:?}"
        ))),
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "nbhdcx_py", frozen)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::Graph::from_edges(n, edges).map_err(err)?,
        })
    }

    /// A named family such as `"complete:5"` or `"kneser:2,1"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let named: NamedGraph = spec.parse().map_err(err)?;
        Ok(PyGraph {
            inner: named.build().map_err(err)?,
        })
    }

    /// A seeded G(n, p) sample.
    #[staticmethod]
    #[pyo3(signature = (n, p, seed=0))]
    fn gnp(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        let params = GnpParams::new(n, p, seed).map_err(err)?;
        Ok(PyGraph {
            inner: graph::gnp_sample(&params).map_err(err)?,
        })
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::parse_edge_list(text).map_err(err)?,
        })
    }

    fn to_edge_list(&self) -> String {
        graph::serialize_edge_list(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Facets of the neighborhood complex.
#[pyfunction]
fn neighborhood_complex(g: &PyGraph) -> PyResult<Vec<Vec<u32>>> {
    Ok(complex::neighborhood_complex(&g.inner)
        .map_err(err)?
        .facets()
        .to_vec())
}

/// Reduced homology of the neighborhood complex, through `max_dim` or in
/// full.
#[pyfunction]
#[pyo3(signature = (g, max_dim=None, coeff="both"))]
fn homology<'py>(
    py: Python<'py>,
    g: &PyGraph,
    max_dim: Option<usize>,
    coeff: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let h = hom::graph_homology_auto(&g.inner, max_dim, coefficients(coeff)?, &Caps::default())
        .map_err(err)?;
    to_py(py, &h.result)
}

/// Reduced homology of a complex given by its facets.
#[pyfunction]
#[pyo3(signature = (facets, max_dim=None, coeff="both"))]
fn complex_homology<'py>(
    py: Python<'py>,
    facets: Vec<Vec<u32>>,
    max_dim: Option<usize>,
    coeff: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let ground = facets.iter().flatten().max().map_or(0, |&v| v as usize + 1);
    let c = complex::SimplicialComplex::new(ground, facets).map_err(err)?;
    let dim = max_dim.unwrap_or(c.dimension().max(0) as usize);
    let mut h = hom::compute_homology(&c, dim, coefficients(coeff)?, &Caps::default())
        .map_err(err)?;
    h.empty = c.is_empty();
    to_py(py, &h)
}

/// The closed-set poset: elements, covers and height.
#[pyfunction]
fn closed_set_poset<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let p = complex::closed_set_poset(&g.inner, &Caps::default()).map_err(err)?;
    json_to_py(py, &p.to_json())
}

#[pyfunction]
fn neighborliness(g: &PyGraph) -> PyResult<usize> {
    complex::neighborliness(&g.inner, &Caps::default()).map_err(err)
}

#[pyfunction]
fn clique_number(g: &PyGraph) -> PyResult<usize> {
    graph::clique_number(&g.inner, &Caps::default()).map_err(err)
}

#[pyfunction]
fn maximal_cliques(g: &PyGraph) -> PyResult<Vec<Vec<usize>>> {
    graph::maximal_cliques(&g.inner, &Caps::default()).map_err(err)
}

#[pyfunction]
fn sphere_certificates<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let certs = certificates::find_sphere_certificates(&g.inner, &Caps::default()).map_err(err)?;
    to_py(py, &certs)
}

#[pyfunction]
#[pyo3(signature = (g, vertex_cap=20))]
fn chromatic_number(g: &PyGraph, vertex_cap: usize) -> PyResult<usize> {
    certificates::chromatic_number_exact(&g.inner, vertex_cap).map_err(err)
}

#[pyfunction]
fn bound_comparison<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let r = certificates::bound_comparison(&g.inner, &Caps::default()).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn theorem1_bound(n: u64, i: u64, p: f64) -> PyResult<f64> {
    asymptotics::theorem1_bound(n, i, p).map_err(err)
}

#[pyfunction]
fn theorem2_bound(n: u64, j: u64, k: u64, p: f64) -> PyResult<f64> {
    asymptotics::theorem2_bound(n, j, k, p).map_err(err)
}

/// A threshold window: `kind` is one of `cor1`, `cor2`, `cor3`, `cor4`.
#[pyfunction]
#[pyo3(signature = (kind, n=None, eps=0.0, l=None, k=None))]
fn window<'py>(
    py: Python<'py>,
    kind: &str,
    n: Option<u64>,
    eps: f64,
    l: Option<u64>,
    k: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let missing = |what: &str| PyValueError::new_err(format!("{kind} needs {what}"));
    let r = match kind {
        "cor1" => asymptotics::cor1_window(n.ok_or_else(|| missing("n"))?, eps).map_err(err)?,
        "cor2" => asymptotics::cor2_alpha_bounds(l.ok_or_else(|| missing("l"))?),
        "cor3" => asymptotics::cor3_window(n.ok_or_else(|| missing("n"))?, eps).map_err(err)?,
        "cor4" => asymptotics::cor4_alpha_window(k.ok_or_else(|| missing("k"))?).map_err(err)?,
        other => return Err(PyValueError::new_err(format!("unknown window {other:?}"))),
    };
    to_py(py, &r)
}

/// Runs a seeded survey and returns its records as dicts.
#[pyfunction]
#[pyo3(signature = (n, p_grid, trials, seed=0, max_dim=4, jobs=None))]
fn run_survey<'py>(
    py: Python<'py>,
    n: usize,
    p_grid: Vec<f64>,
    trials: usize,
    seed: u64,
    max_dim: usize,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = ExperimentConfig::new(n, p_grid, trials, seed, max_dim);
    let records = py
        .detach(|| experiments::run_survey(&cfg, jobs))
        .map_err(err)?;
    to_py(py, &records)
}

/// Survey plus aggregation with the local-maxima diagnostic; returns the
/// summary dict.
#[pyfunction]
#[pyo3(signature = (n, p_grid, trials, seed=0, max_dim=4, jobs=None))]
fn betti_sweep<'py>(
    py: Python<'py>,
    n: usize,
    p_grid: Vec<f64>,
    trials: usize,
    seed: u64,
    max_dim: usize,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = ExperimentConfig::new(n, p_grid, trials, seed, max_dim);
    let (_, summary) = py
        .detach(|| experiments::betti_sweep(&cfg, jobs))
        .map_err(err)?;
    to_py(py, &summary)
}

#[pymodule]
fn nbhdcx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_function(wrap_pyfunction!(neighborhood_complex, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(complex_homology, m)?)?;
    m.add_function(wrap_pyfunction!(closed_set_poset, m)?)?;
    m.add_function(wrap_pyfunction!(neighborliness, m)?)?;
    m.add_function(wrap_pyfunction!(clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_cliques, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_certificates, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(bound_comparison, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_bound, m)?)?;
    m.add_function(wrap_pyfunction!(window, m)?)?;
    m.add_function(wrap_pyfunction!(run_survey, m)?)?;
    m.add_function(wrap_pyfunction!(betti_sweep, m)?)?;
    Ok(())
}
