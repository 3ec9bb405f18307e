//! Python bindings. Reports cross the boundary as JSON strings so the
//! Python side sees exactly what the CLI prints.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use raagfp::coabelian::{fg_coabelian, fpn_coabelian, is_full, CoabelianSpec};
use raagfp::flag_homology::{flag_complex, reduced_homology};
use raagfp::fpcheck::{self, CharacterDocument};
use raagfp::gog::GraphOfFiniteGroups;
use raagfp::verify::{self, VerifyOptions};
use raagfp::{Character, FpLevel, SimplicialGraph};

fn value_error(e: raagfp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

/// Finite simplicial graph with a fixed vertex order.
#[pyclass(name = "Graph", module = "raagfp_py", frozen)]
struct PyGraph {
    inner: SimplicialGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let doc = raagfp::graph::GraphDocument { vertices, edges };
        Ok(PyGraph { inner: SimplicialGraph::from_document(&doc).map_err(value_error)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: SimplicialGraph::parse_json(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        to_json(&self.inner.to_document())
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner.to_document().edges
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn clique_number(&self) -> usize {
        self.inner.clique_number()
    }

    /// Cliques of size at most `max_size`, the empty clique first.
    fn cliques(&self, max_size: usize) -> Vec<Vec<String>> {
        self.inner
            .enumerate_cliques(max_size)
            .into_iter()
            .flatten()
            .map(|c| c.names(&self.inner).into_iter().map(String::from).collect())
            .collect()
    }

    fn join_factors(&self) -> PyResult<Vec<Vec<String>>> {
        let factors = self.inner.join_factors().map_err(value_error)?;
        Ok(factors.into_iter().map(|f| self.names(f)).collect())
    }

    fn central_vertices(&self) -> Vec<String> {
        self.names(self.inner.central_vertices())
    }

    /// Nonzero reduced homology of the flag complex, `{degree: dim}`.
    fn reduced_homology(&self, p: u64) -> PyResult<BTreeMap<i64, usize>> {
        Ok(reduced_homology(&flag_complex(&self.inner), p).map_err(value_error)?.nonzero())
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.vertex_count(), self.inner.edge_count())
    }
}

impl PyGraph {
    fn names(&self, set: raagfp::graph::VertexSet) -> Vec<String> {
        set.into_iter().map(|v| self.inner.name(v).to_string()).collect()
    }

    fn character(&self, chi: BTreeMap<String, i64>, p: u64) -> PyResult<Character> {
        Character::from_document(&self.inner, &CharacterDocument { p, chi }).map_err(value_error)
    }
}

/// Whether `Ker(χ)` is finitely generated.
#[pyfunction]
fn is_fg(graph: &PyGraph, chi: BTreeMap<String, i64>, p: u64) -> PyResult<bool> {
    fpcheck::is_fg(&graph.inner, &graph.character(chi, p)?).map_err(value_error)
}

/// Largest `n` with `Ker(χ)` of type FP_n; `None` means FP_∞.
#[pyfunction]
fn max_fp(graph: &PyGraph, chi: BTreeMap<String, i64>, p: u64) -> PyResult<Option<usize>> {
    match fpcheck::max_fp(&graph.inner, &graph.character(chi, p)?).map_err(value_error)? {
        FpLevel::Finite(n) => Ok(Some(n)),
        FpLevel::Infinite => Ok(None),
    }
}

/// Full single-character report as JSON.
#[pyfunction]
#[pyo3(signature = (graph, chi, p, max_n=None))]
fn analyze(py: Python<'_>, graph: &PyGraph, chi: BTreeMap<String, i64>, p: u64, max_n: Option<usize>) -> PyResult<String> {
    let chi = graph.character(chi, p)?;
    let g = &graph.inner;
    let max_n = max_n.unwrap_or_else(|| g.clique_number()).max(1);
    let report = py.detach(|| fpcheck::analyze(g, &chi, max_n)).map_err(value_error)?;
    Ok(to_json(&report))
}

/// Patterns, fg, FP_n and fullness of the kernel of an integer matrix, as JSON.
#[pyfunction]
#[pyo3(signature = (graph, rows, p, max_n=1))]
fn coabelian(graph: &PyGraph, rows: Vec<Vec<i64>>, p: u64, max_n: usize) -> PyResult<String> {
    let m = CoabelianSpec::new(p, rows).map_err(value_error)?;
    let g = &graph.inner;
    let fg = fg_coabelian(g, &m).map_err(value_error)?;
    let fpn = fpn_coabelian(g, &m, max_n).map_err(value_error)?;
    let fullness = is_full(g, &m).map_err(value_error)?;
    Ok(to_json(&serde_json::json!({ "fg": fg, "fpn": fpn, "fullness": fullness })))
}

/// Euler characteristic, rank table and index bounds of a graph of finite
/// groups given as JSON.
#[pyfunction]
#[pyo3(signature = (text, index=None))]
fn gog(text: &str, index: Option<u64>) -> PyResult<String> {
    let x = GraphOfFiniteGroups::parse_json(text).map_err(value_error)?;
    let m = index.unwrap_or_else(|| x.lcm_vertex_orders());
    let euler = x.euler_report(4).map_err(value_error)?;
    let bounds = x.check_bounds(m).map_err(value_error)?;
    Ok(to_json(&serde_json::json!({ "euler": euler, "bounds": bounds, "reduced": x.reduce().to_document() })))
}

/// Run the randomized self-check; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (seed=0x5eed, trials=50, max_vertices=6))]
fn verify_all(py: Python<'_>, seed: u64, trials: usize, max_vertices: usize) -> String {
    let opts = VerifyOptions { seed, trials, max_vertices, inject_boundary_fault: false };
    to_json(&py.detach(|| verify::run(&opts)))
}

#[pymodule]
fn raagfp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(is_fg, m)?)?;
    m.add_function(wrap_pyfunction!(max_fp, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(coabelian, m)?)?;
    m.add_function(wrap_pyfunction!(gog, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
