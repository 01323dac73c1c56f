//! Python bindings: an index class over a strongly connected digraph and a report
//! function for arbitrary digraphs.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::strongconn::blocks::{two_edge_connected_blocks, two_vertex_connected_blocks};
use ::strongconn::cli::Analysis;
use ::strongconn::edge_analytics::{
    build_index, count_sccs_all_edges, lscc_all_edges, report_sccs_after_edge, ConnectivityIndex,
    Extreme,
};
use ::strongconn::graph_core::{parse_digraph_str, Digraph};
use ::strongconn::query_engine::{self, SeparationAnswer, Witness};
use ::strongconn::vertex_analytics::{
    count_sccs_all_vertices, lscc_all_vertices, report_sccs_after_vertex,
    strong_articulation_points,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn digraph(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Digraph> {
    Digraph::new(n, edges).map_err(value_error)
}

fn extreme(largest: bool) -> Extreme {
    if largest {
        Extreme::Largest
    } else {
        Extreme::Smallest
    }
}

/// `(connected, witness)` where the witness is `("edge", index)`, `("vertex", id)` or `None`.
type PyAnswer = (bool, Option<(&'static str, usize)>);

fn answer(a: SeparationAnswer) -> PyAnswer {
    let witness = a.witness.map(|w| match w {
        Witness::Edge(e) => ("edge", e),
        Witness::Vertex(v) => ("vertex", v),
    });
    (a.connected, witness)
}

/// Deletion index of a strongly connected digraph on vertices `0..n`.
///
/// Self-loops are dropped, so edge indices refer to the remaining edges in input order.
#[pyclass(name = "ConnectivityIndex", frozen)]
struct PyIndex {
    ix: ConnectivityIndex,
}

#[pymethods]
impl PyIndex {
    #[new]
    #[pyo3(signature = (n, edges, start = 0))]
    fn new(n: usize, edges: Vec<(usize, usize)>, start: usize) -> PyResult<Self> {
        let ix = build_index(digraph(n, edges)?, start).map_err(value_error)?;
        Ok(PyIndex { ix })
    }

    #[getter]
    fn n(&self) -> usize {
        self.ix.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.ix.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.ix.graph().edges().to_vec()
    }

    fn strong_bridges(&self) -> Vec<usize> {
        self.ix.strong_bridges()
    }

    fn strong_articulation_points(&self) -> Vec<usize> {
        strong_articulation_points(&self.ix)
    }

    /// Components of the graph without edge `e`, each sorted, ordered by smallest member.
    fn sccs_after_edge(&self, e: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(report_sccs_after_edge(&self.ix, e)
            .map_err(value_error)?
            .components)
    }

    /// Components of the graph without vertex `u`.
    fn sccs_after_vertex(&self, u: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(report_sccs_after_vertex(&self.ix, u)
            .map_err(value_error)?
            .components)
    }

    fn scc_counts_after_edges(&self) -> Vec<usize> {
        count_sccs_all_edges(&self.ix)
    }

    fn scc_counts_after_vertices(&self) -> Vec<usize> {
        count_sccs_all_vertices(&self.ix)
    }

    #[pyo3(signature = (largest = true))]
    fn extreme_sizes_after_edges(&self, largest: bool) -> Vec<usize> {
        lscc_all_edges(&self.ix, extreme(largest))
    }

    #[pyo3(signature = (largest = true))]
    fn extreme_sizes_after_vertices(&self, largest: bool) -> Vec<usize> {
        lscc_all_vertices(&self.ix, extreme(largest))
    }

    fn blocks_2ec(&self) -> Vec<Vec<usize>> {
        two_edge_connected_blocks(&self.ix)
    }

    fn blocks_vr(&self) -> Vec<Vec<usize>> {
        self.ix.block_forest().blocks().clone()
    }

    fn blocks_2vc(&self) -> Vec<Vec<usize>> {
        two_vertex_connected_blocks(&self.ix)
    }

    fn separating_edges(&self, x: usize, y: usize) -> PyResult<Vec<usize>> {
        query_engine::separating_edges(&self.ix, x, y).map_err(value_error)
    }

    fn separating_vertices(&self, x: usize, y: usize) -> PyResult<Vec<usize>> {
        query_engine::separating_vertices(&self.ix, x, y).map_err(value_error)
    }

    fn are_2ec(&self, x: usize, y: usize) -> PyResult<PyAnswer> {
        query_engine::are_2ec(&self.ix, x, y)
            .map(answer)
            .map_err(value_error)
    }

    fn are_2vc(&self, x: usize, y: usize) -> PyResult<PyAnswer> {
        query_engine::are_2vc(&self.ix, x, y)
            .map(answer)
            .map_err(value_error)
    }
}

/// JSON analysis report of any digraph, one sub-report per strongly connected component.
#[pyfunction]
#[pyo3(signature = (n, edges, start = None))]
fn analyze(n: usize, edges: Vec<(usize, usize)>, start: Option<usize>) -> PyResult<String> {
    let analysis = Analysis::new(digraph(n, edges)?, start).map_err(value_error)?;
    Ok(analysis.report().to_json())
}

/// Parses the edge-list text format into `(n, edges)`.
#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let g = parse_digraph_str(text).map_err(value_error)?;
    Ok((g.n(), g.edges().to_vec()))
}

#[pymodule(name = "strongconn")]
fn strongconn_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndex>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    Ok(())
}
