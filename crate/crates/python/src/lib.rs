//! Python bindings. Rationals cross the boundary as `"p/q"` strings,
//! integers, or `fractions.Fraction`; reports come back as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

use powerham::hamiltonian::{self, Certificate, PipelineConfig};
use powerham::{constants, generators, properties, walks, Ratio, VertexSet};

fn err(e: powerham::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ratio(v: &Bound<'_, PyAny>) -> PyResult<Ratio> {
    if let Ok(s) = v.cast::<PyString>() {
        return s.to_str()?.parse().map_err(err);
    }
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Ratio::from_integer(i));
    }
    if v.hasattr("numerator")? && v.hasattr("denominator")? {
        let p: i64 = v.getattr("numerator")?.extract()?;
        let q: i64 = v.getattr("denominator")?.extract()?;
        return Ok(Ratio::new(p, q));
    }
    if let Ok(f) = v.extract::<f64>() {
        return format!("{f}").parse().map_err(err);
    }
    Err(PyValueError::new_err("expected a rational: \"p/q\", an int or a Fraction"))
}

fn to_py<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Graph", frozen, module = "powerham")]
struct PyGraph(powerham::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        powerham::Graph::from_edges(n, &edges).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        powerham::Graph::from_text(text).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph(powerham::Graph::complete(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph(powerham::Graph::cycle(n))
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed = hamiltonian::DEFAULT_SEED))]
    fn gnp(n: usize, p: &Bound<'_, PyAny>, seed: u64) -> PyResult<Self> {
        generators::gnp(n, &ratio(p)?, seed).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed = hamiltonian::DEFAULT_SEED))]
    fn random_bipartite(n: usize, p: &Bound<'_, PyAny>, seed: u64) -> PyResult<Self> {
        generators::random_bipartite(n, &ratio(p)?, seed).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn two_overlapping_cliques(n: usize, mu: &Bound<'_, PyAny>) -> PyResult<Self> {
        generators::two_overlapping_cliques(n, &ratio(mu)?).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn clique_complement(n: usize, mu: &Bound<'_, PyAny>) -> PyResult<Self> {
        generators::clique_complement(n, &ratio(mu)?).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn complete_multipartite(parts: Vec<usize>) -> PyResult<Self> {
        generators::complete_multipartite(&parts).map(PyGraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        Ok(self.0.neighbors(v).map_err(err)?.to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.edge_count())
    }
}

/// Smallest ρ with the graph (ρ, d)-dense; exact up to the scan limit unless
/// `exact` says otherwise.
#[pyfunction]
#[pyo3(signature = (g, d, exact = None, budget = 2000, seed = hamiltonian::DEFAULT_SEED))]
fn denseness(py: Python<'_>, g: &PyGraph, d: &Bound<'_, PyAny>, exact: Option<bool>, budget: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let d = ratio(d)?;
    let r = if exact.unwrap_or(g.0.n() <= properties::DENSENESS_EXACT_LIMIT) {
        properties::denseness_exact(&g.0, &d)
    } else {
        properties::denseness_heuristic(&g.0, &d, budget, seed)
    };
    to_py(py, &r.map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, exact = None, budget = 2000, seed = hamiltonian::DEFAULT_SEED))]
fn inseparability(py: Python<'_>, g: &PyGraph, exact: Option<bool>, budget: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let r = if exact.unwrap_or(g.0.n() <= properties::DENSENESS_EXACT_LIMIT) {
        properties::inseparable_exact(&g.0)
    } else {
        properties::inseparable_heuristic(&g.0, budget, seed)
    };
    to_py(py, &r.map_err(err)?)
}

#[pyfunction]
fn robustly_matchable(py: Python<'_>, g: &PyGraph, rho: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let r = properties::robustly_matchable_exact(&g.0, &ratio(rho)?, &ratio(d)?).map_err(err)?;
    to_py(py, &r)
}

/// `counts[v][i]`: walks from `x` to `v` with `i` inner vertices.
#[pyfunction]
fn count_walks(py: Python<'_>, g: &PyGraph, x: usize, max_level: usize) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    let table = walks::count_walks(&g.0, x, max_level).map_err(err)?;
    let int = py.import("builtins")?.getattr("int")?;
    table
        .counts
        .iter()
        .map(|row| row.iter().map(|c| Ok(int.call1((c.to_string(),))?.unbind())).collect())
        .collect()
}

fn config(k: usize, seed: u64, zeta: Option<&Bound<'_, PyAny>>, reservoir: Option<&Bound<'_, PyAny>>, retries: Option<usize>) -> PyResult<PipelineConfig> {
    let mut cfg = PipelineConfig::new(k);
    cfg.seed = seed;
    if let Some(z) = zeta {
        cfg.zeta = ratio(z)?;
    }
    if let Some(r) = reservoir {
        cfg.reservoir_fraction = ratio(r)?;
    }
    if let Some(r) = retries {
        cfg.retries = r;
    }
    Ok(cfg)
}

/// Runs the pipeline; returns `{"certificate": {...} | None, "report": {...}}`.
#[pyfunction]
#[pyo3(signature = (g, k, seed = hamiltonian::DEFAULT_SEED, zeta = None, reservoir = None, retries = None))]
fn find_hamiltonian_power(
    py: Python<'_>,
    g: &PyGraph,
    k: usize,
    seed: u64,
    zeta: Option<&Bound<'_, PyAny>>,
    reservoir: Option<&Bound<'_, PyAny>>,
    retries: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let cfg = config(k, seed, zeta, reservoir, retries)?;
    let out = py.detach(|| hamiltonian::find_hamiltonian_power(&g.0, &cfg)).map_err(err)?;
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (g, k, sets, seed = hamiltonian::DEFAULT_SEED, per_set_min = 1))]
fn find_with_hitting_sets(py: Python<'_>, g: &PyGraph, k: usize, sets: Vec<Vec<usize>>, seed: u64, per_set_min: usize) -> PyResult<Py<PyAny>> {
    let cfg = config(k, seed, None, None, None)?;
    let sets: Vec<VertexSet> = sets.iter().map(|s| VertexSet::from_members(g.0.n(), s)).collect::<Result<_, _>>().map_err(err)?;
    let out = py.detach(|| hamiltonian::find_with_hitting_sets(&g.0, &cfg, &sets, per_set_min)).map_err(err)?;
    to_py(py, &out)
}

/// `(valid, first violating pair or None)`.
#[pyfunction]
fn verify(g: &PyGraph, k: usize, ordering: Vec<usize>) -> PyResult<(bool, Option<(usize, usize)>)> {
    let v = hamiltonian::verify(&g.0, &Certificate { k, ordering }).map_err(err)?;
    Ok((v.valid, v.violation))
}

#[pyfunction]
fn brute_force_oracle(py: Python<'_>, g: &PyGraph, k: usize) -> PyResult<Option<Vec<usize>>> {
    let found = py.detach(|| hamiltonian::brute_force_oracle(&g.0, k)).map_err(err)?;
    Ok(found.map(|c| c.ordering))
}

/// Every constant of the proof at `(d, μ, k)`, exact where representable.
#[pyfunction]
fn paper_constants(py: Python<'_>, d: &Bound<'_, PyAny>, mu: &Bound<'_, PyAny>, k: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &constants::paper_constants(&ratio(d)?, &ratio(mu)?, k).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "powerham")]
fn powerham_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(denseness, m)?)?;
    m.add_function(wrap_pyfunction!(inseparability, m)?)?;
    m.add_function(wrap_pyfunction!(robustly_matchable, m)?)?;
    m.add_function(wrap_pyfunction!(count_walks, m)?)?;
    m.add_function(wrap_pyfunction!(find_hamiltonian_power, m)?)?;
    m.add_function(wrap_pyfunction!(find_with_hitting_sets, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(paper_constants, m)?)?;
    m.add("DEFAULT_SEED", hamiltonian::DEFAULT_SEED)?;
    Ok(())
}
