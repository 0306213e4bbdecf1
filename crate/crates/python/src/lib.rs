use std::fmt::Display;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use leavitt_lab::graph::{classify_graph, to_dot, Graph};
use leavitt_lab::lpa::Element;
use leavitt_lab::pnorm::element_norm_acyclic;
use leavitt_lab::spi::spi_witness;
use leavitt_lab::transforms::{desingularize, reachable_subgraph, remove_sources};

fn value_error(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A directed graph; elements are passed as JSON term lists.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Arc<Graph>,
}

impl PyGraph {
    fn wrap(g: Graph) -> PyGraph {
        PyGraph { inner: Arc::new(g) }
    }

    fn element(&self, text: &str) -> PyResult<Element> {
        Element::from_json(&self.inner, text).map_err(value_error)
    }
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyGraph> {
        Graph::from_json(text).map(PyGraph::wrap).map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        to_dot(&self.inner)
    }

    fn vertices(&self) -> Vec<String> {
        self.inner
            .vertices()
            .map(|v| self.inner.vertex_name(v).to_string())
            .collect()
    }

    /// One of "not_simple", "simple_acyclic", "simple_purely_infinite".
    fn classify(&self) -> PyResult<&'static str> {
        classify_graph(&self.inner)
            .map(|c| c.verdict.as_str())
            .map_err(value_error)
    }

    fn classification_json(&self) -> PyResult<String> {
        classify_graph(&self.inner)
            .map(|c| c.to_json_value(&self.inner).to_string())
            .map_err(value_error)
    }

    fn remove_sources(&self) -> PyResult<PyGraph> {
        remove_sources(&self.inner).map(PyGraph::wrap).map_err(value_error)
    }

    fn desingularize(&self, depth: usize) -> PyResult<PyGraph> {
        desingularize(&self.inner, depth).map(PyGraph::wrap).map_err(value_error)
    }

    fn reachable(&self, vertex: &str) -> PyResult<PyGraph> {
        reachable_subgraph(&self.inner, vertex)
            .map(PyGraph::wrap)
            .map_err(value_error)
    }

    fn normalize(&self, element: &str) -> PyResult<String> {
        Ok(self.element(element)?.to_json())
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        Ok((&self.element(a)? * &self.element(b)?).to_json())
    }

    /// Witness JSON with `x`, `y`, `v`, the trace and a `verified` flag.
    fn witness(&self, element: &str) -> PyResult<String> {
        let a = self.element(element)?;
        let w = spi_witness(&a).map_err(value_error)?;
        let mut v = w.to_json_value();
        v["verified"] = serde_json::Value::Bool(w.verify(&a));
        Ok(v.to_string())
    }

    /// `(value, exact, converged)`; a lower bound when not exact.
    #[pyo3(signature = (element, p = 1.0))]
    fn norm(&self, element: &str, p: f64) -> PyResult<(f64, bool, bool)> {
        let n = element_norm_acyclic(&self.element(element)?, p).map_err(value_error)?;
        Ok((n.value, n.exact, n.converged))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edges().count()
        )
    }
}

#[pymodule]
fn pyleavitt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    Ok(())
}
