//! Python bindings: graphs, orientations, group plans and the operations between them.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use primegraph_core::graph::{canonical_form, format};
use primegraph_core::{self as core, Error, SynthOptions};

create_exception!(primegraph, PrimeGraphError, PyValueError);
create_exception!(primegraph, LimitError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_limit() {
        LimitError::new_err(e.to_string())
    } else {
        PrimeGraphError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

/// Undirected simple graph with string labels.
#[pyclass(name = "Graph", module = "primegraph", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: core::LabeledGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new()))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let mut g = core::LabeledGraph::new(vertices).map_err(err)?;
        for (a, b) in &edges {
            let (u, v) = (g.vertex(a).map_err(err)?, g.vertex(b).map_err(err)?);
            g.add_edge(u, v).map_err(err)?;
        }
        Ok(PyGraph { inner: g })
    }

    /// Parses an edge list or a graph6 string.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: format::parse_graph(text).map_err(err)? })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        let g = &self.inner;
        g.edges().into_iter().map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())).collect()
    }

    fn complement(&self) -> Self {
        PyGraph { inner: self.inner.complement() }
    }

    fn to_graph6(&self) -> String {
        format::to_graph6(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        format::to_edge_list(&self.inner)
    }

    /// graph6 string shared by exactly the graphs isomorphic to this one.
    fn canonical_form(&self) -> PyResult<String> {
        canonical_form(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Orientation of a graph, read as a Frobenius digraph when valid.
#[pyclass(name = "Orientation", module = "primegraph", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
pub struct PyOrientation {
    inner: core::Orientation,
}

#[pymethods]
impl PyOrientation {
    #[new]
    #[pyo3(signature = (vertices, arcs = Vec::new()))]
    fn new(vertices: Vec<String>, arcs: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyOrientation { inner: core::Orientation::from_arcs(&vertices, &arcs).map_err(err)? })
    }

    /// Parses `u > v` lines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyOrientation { inner: format::parse_arc_list(text).map_err(err)? })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Vec<(String, String)> {
        let o = &self.inner;
        o.arcs().into_iter().map(|(u, v)| (o.label(u).to_string(), o.label(v).to_string())).collect()
    }

    fn underlying(&self) -> PyGraph {
        PyGraph { inner: self.inner.underlying().clone() }
    }

    /// Violations of the Frobenius orientation rules, as readable strings.
    fn violations(&self) -> Vec<String> {
        core::validate_frobenius_orientation(&self.inner).iter().map(|v| v.to_string()).collect()
    }

    fn is_valid(&self) -> bool {
        core::validate_frobenius_orientation(&self.inner).is_empty()
    }

    /// Source, middle and sink sets with the derived sink and source partitions.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &core::analyze(&self.inner).map_err(err)?.to_json())
    }

    fn to_text(&self) -> String {
        format::to_arc_list(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Orientation(n={}, arcs={})", self.inner.n(), self.inner.arc_count())
    }
}

/// Construction recipe for a solvable group with a prescribed Frobenius digraph.
#[pyclass(name = "GroupPlan", module = "primegraph", skip_from_py_object, frozen)]
#[derive(Clone)]
pub struct PyGroupPlan {
    inner: core::GroupPlan,
}

impl PyGroupPlan {
    fn model(&self) -> PyResult<core::GroupModel> {
        core::GroupModel::from_plan(&self.inner).map_err(err)
    }
}

#[pymethods]
impl PyGroupPlan {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGroupPlan { inner: core::GroupPlan::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Primes keyed by vertex label.
    #[getter]
    fn primes(&self) -> Vec<(String, u64)> {
        self.inner.prime_map().into_iter().collect()
    }

    #[getter]
    fn order(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let text = self.inner.order().to_string();
        Ok(py.import("builtins")?.getattr("int")?.call1((text,))?.unbind())
    }

    fn prime_graph(&self) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.model()?.compute_prime_graph() })
    }

    fn digraph(&self) -> PyResult<PyOrientation> {
        Ok(PyOrientation { inner: self.model()?.compute_frobenius_digraph().map_err(err)? })
    }

    fn sigma(&self) -> PyResult<usize> {
        self.model()?.sigma().map_err(err)
    }

    /// Round-trip report; `brute_cap` bounds the group order for an exhaustive scan.
    #[pyo3(signature = (brute_cap = None))]
    fn verify<'py>(&self, py: Python<'py>, brute_cap: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &core::verify_round_trip(&self.inner, brute_cap).map_err(err)?.to_json())
    }

    fn __repr__(&self) -> String {
        format!("GroupPlan(order={})", self.inner.order())
    }
}

/// Realizability verdict with a coloring certificate or a violation.
#[pyfunction]
fn check<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let verdict = core::is_solvable_prime_graph(&graph.inner).map_err(err)?;
    to_py(py, &verdict.to_json(&graph.inner))
}

#[pyfunction]
fn is_realizable(graph: &PyGraph) -> PyResult<bool> {
    Ok(core::is_solvable_prime_graph(&graph.inner).map_err(err)?.realizable)
}

/// Frobenius orientation of the complement from its least 3-coloring.
#[pyfunction]
fn orient(graph: &PyGraph) -> PyResult<PyOrientation> {
    Ok(PyOrientation { inner: core::canonical_orientation(&graph.inner).map_err(err)? })
}

#[pyfunction]
fn classify_girth(graph: &PyGraph) -> PyResult<String> {
    Ok(core::classify_girth(&graph.inner).map_err(err)?.to_string())
}

#[pyfunction]
fn is_minimal<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::is_minimal(&graph.inner).map_err(err)?.to_json())
}

#[pyfunction]
fn enumerate_minimal(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(core::enumerate_minimal(n).map_err(err)?.into_iter().map(|inner| PyGraph { inner }).collect())
}

#[pyfunction]
#[pyo3(signature = (graph, vertex, label = None))]
fn duplicate(graph: &PyGraph, vertex: &str, label: Option<&str>) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: core::linked_vertex_duplication(&graph.inner, vertex, label).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (orientation, strict = false))]
fn synthesize(orientation: &PyOrientation, strict: bool) -> PyResult<PyGroupPlan> {
    let opts = if strict { SynthOptions::strict() } else { SynthOptions::default() };
    Ok(PyGroupPlan { inner: core::synthesize(&orientation.inner, &opts).map_err(err)? })
}

#[pymodule]
fn primegraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyOrientation>()?;
    m.add_class::<PyGroupPlan>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(is_realizable, m)?)?;
    m.add_function(wrap_pyfunction!(orient, m)?)?;
    m.add_function(wrap_pyfunction!(classify_girth, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(duplicate, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add("PrimeGraphError", m.py().get_type::<PrimeGraphError>())?;
    m.add("LimitError", m.py().get_type::<LimitError>())?;
    Ok(())
}
