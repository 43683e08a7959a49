//! Python bindings: graphs, density reports, constructions, resistance and
//! the verification suites. Big integers come back as `int` and exact
//! ratios as `fractions.Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use treedep_core::constructions::{Family, Strategy, TargetRational};
use treedep_core::verify::{build_construction, check_recipe_claim, run_suite, Suite, SuiteConfig};
use treedep_core::{EdgeRef, VertexId};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An undirected loopless multigraph on vertices `0..n`.
#[pyclass(name = "Multigraph", module = "treedep")]
struct Multigraph {
    inner: treedep_core::Multigraph,
}

#[pymethods]
impl Multigraph {
    #[new]
    fn new(vertex_count: usize) -> PyResult<Self> {
        let inner = treedep_core::Multigraph::new(vertex_count).map_err(value_error)?;
        Ok(Multigraph { inner })
    }

    /// Parses the text format: a vertex count, then `u v m [label]` lines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = treedep_core::parse_graph(text).map_err(value_error)?;
        Ok(Multigraph { inner })
    }

    /// Adds a record of `multiplicity` parallel `u`-`v` edges; returns its index.
    #[pyo3(signature = (u, v, multiplicity = 1))]
    fn add_edge(&mut self, u: usize, v: usize, multiplicity: u64) -> PyResult<usize> {
        let e = self.inner.add_edge(u, v, multiplicity).map_err(value_error)?;
        Ok(e.0)
    }

    fn to_text(&self) -> String {
        treedep_core::serialize_graph(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_units(&self) -> u64 {
        self.inner.edge_units()
    }

    /// Edge records as `(u, v, multiplicity)`.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize, u64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.u(), e.v(), e.multiplicity()))
            .collect()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Number of spanning trees.
    fn tau<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok(treedep_core::tau(&self.inner).into_pyobject(py)?.into_any())
    }

    fn __repr__(&self) -> String {
        format!(
            "Multigraph(vertices={}, records={}, edge_units={})",
            self.inner.vertex_count(),
            self.inner.edges().len(),
            self.inner.edge_units()
        )
    }
}

/// Exact densities of every edge record, the dependence and its argmax.
#[pyclass(name = "DensityReport", module = "treedep")]
struct DensityReport {
    inner: treedep_core::DensityReport,
    json: String,
}

#[pymethods]
impl DensityReport {
    #[getter]
    fn tau<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok((&self.inner.tau).into_pyobject(py)?.into_any())
    }

    #[getter]
    fn dep<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        (&self.inner.dep).into_pyobject(py)
    }

    #[getter]
    fn argmax(&self) -> Vec<usize> {
        self.inner.argmax.iter().map(|e| e.0).collect()
    }

    /// Density of each edge record, in record order.
    #[getter]
    fn densities<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .per_edge
            .iter()
            .map(|d| (&d.density).into_pyobject(py))
            .collect()
    }

    /// Spanning trees through one unit of each edge record.
    #[getter]
    fn tau_edges<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .per_edge
            .iter()
            .map(|d| Ok((&d.tau_edge).into_pyobject(py)?.into_any()))
            .collect()
    }

    /// The report in its JSON wire format.
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("DensityReport(tau={}, dep={})", self.inner.tau, self.inner.dep)
    }
}

#[pyfunction]
fn density_report(graph: &Multigraph) -> PyResult<DensityReport> {
    let inner = treedep_core::density_report(&graph.inner).map_err(value_error)?;
    let json = serde_json::to_string(&inner.to_json(&graph.inner)).map_err(value_error)?;
    Ok(DensityReport { inner, json })
}

/// Effective resistance between `u` and `v` with unit resistors.
#[pyfunction]
fn resistance<'py>(py: Python<'py>, graph: &Multigraph, u: usize, v: usize) -> PyResult<Bound<'py, PyAny>> {
    let omega = treedep_core::resistance(&graph.inner, VertexId(u), VertexId(v)).map_err(value_error)?;
    omega.into_pyobject(py)
}

/// Density of edge record `edge`, by contraction.
#[pyfunction]
fn density<'py>(py: Python<'py>, graph: &Multigraph, edge: usize) -> PyResult<Bound<'py, PyAny>> {
    let d = treedep_core::density(&graph.inner, EdgeRef(edge)).map_err(value_error)?;
    d.into_pyobject(py)
}

fn parse_family(name: &str) -> PyResult<Family> {
    match name {
        "bipartite" => Ok(Family::BipartiteNecklace),
        "theta" => Ok(Family::ThetaDensity),
        "theta-dual" => Ok(Family::ThetaDualMultigraph),
        "planar" => Ok(Family::HNecklace),
        other => Err(value_error(format!(
            "unknown family {other:?} (expected bipartite, theta, theta-dual or planar)"
        ))),
    }
}

/// Builds the `family` graph for target `"p/q"`. Returns the graph, the
/// recipe JSON, and whether re-analysis confirmed the recipe's claim.
#[pyfunction]
#[pyo3(signature = (family, target, strategy = "greedy"))]
fn construct(family: &str, target: &str, strategy: &str) -> PyResult<(Multigraph, String, bool)> {
    let family = parse_family(family)?;
    let t: TargetRational = target.parse().map_err(value_error)?;
    let strategy: Strategy = strategy.parse().map_err(value_error)?;
    let (graph, recipe) = build_construction(family, t, strategy).map_err(value_error)?;
    let report = treedep_core::density_report(&graph).map_err(value_error)?;
    let confirmed = check_recipe_claim(&graph, &recipe, &report).passed && recipe.validate().is_ok();
    let json = serde_json::to_string(&recipe.to_json()).map_err(value_error)?;
    Ok((Multigraph { inner: graph }, json, confirmed))
}

/// Runs a verification suite (`foster`, `dual`, `bound`, `forms`, `oracle`).
/// Returns whether every property held and the TSV summary.
#[pyfunction]
#[pyo3(signature = (suite, seed = 1, corpus = 500, max_q = 6))]
fn verify(py: Python<'_>, suite: &str, seed: u64, corpus: usize, max_q: u64) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    let config = SuiteConfig {
        seed,
        corpus_size: corpus,
        max_q,
        ..SuiteConfig::default()
    };
    let report = py.detach(|| run_suite(suite, &config)).map_err(value_error)?;
    Ok((report.passed(), report.summary_tsv()))
}

#[pymodule]
fn treedep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Multigraph>()?;
    m.add_class::<DensityReport>()?;
    m.add_function(wrap_pyfunction!(density_report, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(resistance, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
