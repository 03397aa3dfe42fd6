//! Python bindings. Reports come back as plain dicts with the same layout as
//! the command line's JSON output.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use dpcolor::bounds::{sigma_report_for_cover, zdp_search};
use dpcolor::io::{cover_to_json, graph_to_json, parse_cover_json, parse_edge_list, parse_graph_json};
use dpcolor::{CoverFamily, DpError, Limits, ListAssignment, Transversal};

create_exception!(dpcolor, DpColorError, PyValueError);

fn err(e: DpError) -> PyErr {
    DpColorError::new_err(e.to_string())
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn limits(node_cap: Option<u64>, max_assignments: Option<usize>, jobs: usize) -> Limits {
    let mut l = Limits::default().with_jobs(jobs);
    if let Some(cap) = node_cap {
        l = l.with_max_nodes(cap);
    }
    if let Some(cap) = max_assignments {
        l = l.with_max_assignments(cap);
    }
    l
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "dpcolor", frozen)]
struct PyGraph(dpcolor::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        dpcolor::make_graph(n, &edges).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph(dpcolor::Graph::complete(n))
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> Self {
        PyGraph(dpcolor::Graph::complete_bipartite(a, b))
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        dpcolor::Graph::cycle(n).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph(dpcolor::Graph::path(n))
    }

    #[staticmethod]
    fn edgeless(n: usize) -> Self {
        PyGraph(dpcolor::Graph::edgeless(n))
    }

    /// Parses the `n m` header edge-list format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        parse_edge_list(text).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_graph_json(text).map(PyGraph).map_err(err)
    }

    fn to_json(&self) -> String {
        graph_to_json(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.n() {
            return Err(err(DpError::VertexOutOfRange { vertex: v, n: self.0.n() }));
        }
        Ok(self.0.degree(v))
    }

    /// `G` plus `s` dominating vertices forming a clique.
    fn join(&self, s: usize) -> Self {
        PyGraph(dpcolor::join(&self.0, s))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.m())
    }
}

/// A cover: lists partitioning the cover vertices plus the cross edges.
#[pyclass(name = "Cover", module = "dpcolor", frozen)]
struct PyCover(dpcolor::Cover);

#[pymethods]
impl PyCover {
    #[new]
    fn new(base: PyRef<'_, PyGraph>, lists: Vec<Vec<usize>>, h_edges: Vec<(usize, usize)>) -> PyResult<Self> {
        dpcolor::Cover::new(base.0.clone(), lists, &h_edges).map(PyCover).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_cover_json(text).map(PyCover).map_err(err)
    }

    fn to_json(&self) -> String {
        cover_to_json(&self.0)
    }

    #[getter]
    fn base(&self) -> PyGraph {
        PyGraph(self.0.base().clone())
    }

    #[getter]
    fn lists(&self) -> Vec<Vec<usize>> {
        self.0.lists().to_vec()
    }

    #[getter]
    fn h_edges(&self) -> Vec<(usize, usize)> {
        self.0.h_edges().to_vec()
    }

    /// The common list size, or `None` when sizes differ.
    fn uniform_size(&self) -> Option<usize> {
        self.0.uniform_size()
    }

    fn is_transversal(&self, chosen: Vec<usize>) -> bool {
        dpcolor::check_transversal(&self.0, &Transversal(chosen))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Cover(n={}, vertices={})", self.0.base().n(), self.0.len())
    }
}

#[pyfunction]
#[pyo3(signature = (graph, node_cap=None))]
fn chromatic_number(graph: PyRef<'_, PyGraph>, node_cap: Option<u64>) -> PyResult<usize> {
    dpcolor::chromatic_number(&graph.0, &limits(node_cap, None, 1)).map_err(err)
}

#[pyfunction]
fn degeneracy<'py>(py: Python<'py>, graph: PyRef<'_, PyGraph>) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &dpcolor::degeneracy(&graph.0))
}

#[pyfunction]
#[pyo3(signature = (graph, jobs=1, max_assignments=None))]
fn chi_dp(graph: PyRef<'_, PyGraph>, jobs: usize, max_assignments: Option<usize>) -> PyResult<usize> {
    dpcolor::chi_dp(&graph.0, &limits(None, max_assignments, jobs)).map_err(err)
}

/// Whether every `k`-fold cover of `graph` has a transversal; when not, the
/// first refuting cover of the normalized family comes with it.
#[pyfunction]
#[pyo3(signature = (graph, k, jobs=1, max_assignments=None))]
fn is_dp_colorable<'py>(
    py: Python<'py>,
    graph: PyRef<'_, PyGraph>,
    k: usize,
    jobs: usize,
    max_assignments: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let v = dpcolor::is_dp_colorable_at(&graph.0, k, &limits(None, max_assignments, jobs)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("k", v.k)?;
    d.set_item("colorable", v.colorable)?;
    d.set_item("family_size", v.family_size)?;
    d.set_item("refuting_index", v.refuting_index)?;
    d.set_item("refuting_cover", v.refuting.map(PyCover))?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (cover, node_cap=None))]
fn solve<'py>(py: Python<'py>, cover: PyRef<'_, PyCover>, node_cap: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let result = dpcolor::find_transversal(&cover.0, &limits(node_cap, None, 1)).map_err(err)?;
    to_dict(py, &result)
}

#[pyfunction]
fn validate<'py>(py: Python<'py>, cover: PyRef<'_, PyCover>) -> PyResult<Bound<'py, PyAny>> {
    let c = &cover.0;
    to_dict(py, &dpcolor::validate_cover(c.base(), c.lists(), c.h_edges()))
}

/// The even-`n` lower-bound cover of `J(K_{n/2,n/2}, n/2 - 1)`.
#[pyfunction]
fn hard_instance(n: usize) -> PyResult<PyCover> {
    dpcolor::hard_instance(n).map(|h| PyCover(h.cover)).map_err(err)
}

/// Symbolic `[vertex, i, j]` label of every cover vertex of [`hard_instance`].
#[pyfunction]
fn hard_instance_labels<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &dpcolor::hard_instance(n).map_err(err)?.labeling)
}

#[pyfunction]
#[pyo3(signature = (n, refute=false, node_cap=None))]
fn verify_hard_instance<'py>(
    py: Python<'py>,
    n: usize,
    refute: bool,
    node_cap: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &dpcolor::verify_hard_instance(n, refute, &limits(node_cap, None, 1)).map_err(err)?)
}

#[pyfunction]
fn bounds<'py>(py: Python<'py>, graph: PyRef<'_, PyGraph>) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &dpcolor::zdp_upper(&graph.0, &Limits::default()).map_err(err)?)
}

#[pyfunction]
fn zdp_n_bounds<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &dpcolor::zdp_n_bounds(n))
}

/// Least `s ≤ s_max` with `chi_DP(J(G, s)) = chi(J(G, s))`, with the per-`s` steps.
#[pyfunction]
#[pyo3(signature = (graph, s_max, jobs=1, max_assignments=None))]
fn zdp<'py>(
    py: Python<'py>,
    graph: PyRef<'_, PyGraph>,
    s_max: usize,
    jobs: usize,
    max_assignments: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &zdp_search(&graph.0, s_max, &limits(None, max_assignments, jobs)).map_err(err)?)
}

/// Sufficiency check for covers of `J(G, A)`. `k` defaults to `chi(G)`.
#[pyfunction]
#[pyo3(signature = (graph, a_size, list_sizes, a_list_min=None, k=None))]
fn sigma<'py>(
    py: Python<'py>,
    graph: PyRef<'_, PyGraph>,
    a_size: usize,
    list_sizes: Vec<usize>,
    a_list_min: Option<usize>,
    k: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let k = match k {
        Some(k) => k,
        None => dpcolor::chromatic_number(&graph.0, &Limits::default()).map_err(err)?,
    };
    to_dict(py, &dpcolor::sigma_report(&graph.0, a_size, &list_sizes, a_list_min, k).map_err(err)?)
}

#[pyfunction]
fn sigma_for_cover<'py>(
    py: Python<'py>,
    graph: PyRef<'_, PyGraph>,
    a_size: usize,
    cover: PyRef<'_, PyCover>,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &sigma_report_for_cover(&graph.0, a_size, &cover.0, &Limits::default()).map_err(err)?)
}

#[pyfunction]
fn chi_equals_chidp_guaranteed(n: usize, r: usize) -> bool {
    dpcolor::chi_equals_chidp_guaranteed(n, r)
}

/// The cover of a list assignment, with the color of each cover vertex.
#[pyfunction]
fn cover_from_lists(graph: PyRef<'_, PyGraph>, lists: Vec<Vec<usize>>) -> PyResult<(PyCover, Vec<usize>)> {
    let lc = dpcolor::cover_from_lists(&graph.0, &ListAssignment::new(lists)).map_err(err)?;
    Ok((PyCover(lc.cover), lc.colors))
}

/// Number of covers in the normalized `k`-fold family, `None` past 2^128.
#[pyfunction]
fn family_size(graph: PyRef<'_, PyGraph>, k: usize) -> PyResult<Option<u128>> {
    Ok(CoverFamily::new(&graph.0, k).map_err(err)?.len())
}

#[pyfunction]
fn cover_at(graph: PyRef<'_, PyGraph>, k: usize, index: u128) -> PyResult<PyCover> {
    let family = CoverFamily::new(&graph.0, k).map_err(err)?;
    match family.len() {
        Some(len) if index < len => Ok(PyCover(family.cover_at(index))),
        _ => Err(pyo3::exceptions::PyIndexError::new_err(format!("no cover with index {index}"))),
    }
}

#[pymodule(name = "dpcolor")]
fn dpcolor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DpColorError", m.py().get_type::<DpColorError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCover>()?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(degeneracy, m)?)?;
    m.add_function(wrap_pyfunction!(chi_dp, m)?)?;
    m.add_function(wrap_pyfunction!(is_dp_colorable, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(hard_instance, m)?)?;
    m.add_function(wrap_pyfunction!(hard_instance_labels, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hard_instance, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(zdp_n_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(zdp, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_for_cover, m)?)?;
    m.add_function(wrap_pyfunction!(chi_equals_chidp_guaranteed, m)?)?;
    m.add_function(wrap_pyfunction!(cover_from_lists, m)?)?;
    m.add_function(wrap_pyfunction!(family_size, m)?)?;
    m.add_function(wrap_pyfunction!(cover_at, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
