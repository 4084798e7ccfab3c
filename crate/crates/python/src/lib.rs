//! Python bindings. Graphs cross the boundary as an opaque `Graph` object;
//! query and report rows come back as plain tuples and dicts.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use uto_core::analysis::{self, Axis, TagKey, DEFAULT_EDGES};
use uto_core::crawler::{self, CrawlPolicy, FixtureFetcher, Site};
use uto_core::ontology::{self, builtin};
use uto_core::query::{self, TagGroup};
use uto_core::store::{self, parse_turtle, serialize_rdfxml, serialize_turtle};
use uto_core::Iri;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An in-memory set of triples.
#[pyclass(name = "Graph", module = "uto", skip_from_py_object)]
#[derive(Default)]
struct PyGraph {
    inner: uto_core::Graph,
}

impl From<uto_core::Graph> for PyGraph {
    fn from(inner: uto_core::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    #[staticmethod]
    fn from_turtle(text: &str) -> PyResult<Self> {
        parse_turtle(text).map(Self::from).map_err(value_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        uto_core::Graph::load(path).map(Self::from).map_err(|e| PyIOError::new_err(e.to_string()))
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.inner.save(path).map_err(|e| PyIOError::new_err(e.to_string()))
    }

    fn to_turtle(&self) -> String {
        serialize_turtle(&self.inner)
    }

    fn to_rdfxml(&self) -> PyResult<String> {
        serialize_rdfxml(&self.inner).map_err(value_err)
    }

    /// `(subject, predicate, object)` strings; literals give their lexical text.
    fn triples(&self) -> Vec<(String, String, String)> {
        self.inner
            .iter()
            .map(|t| (t.subject.to_string(), t.predicate.to_string(), t.object.text().to_string()))
            .collect()
    }

    /// Union with another graph, as a new graph.
    fn merge(&self, other: &PyGraph) -> PyGraph {
        store::merge([self.inner.clone(), other.inner.clone()]).into()
    }

    /// Retypes vote and date literals the way `import` does.
    fn normalize(&self) -> PyGraph {
        ontology::normalize_literals(&self.inner, builtin()).into()
    }

    fn expand(&self) -> PyGraph {
        ontology::expand_graph(&self.inner, builtin()).into()
    }

    fn infer(&self) -> PyGraph {
        ontology::infer_closure(&self.inner, builtin()).into()
    }

    /// One `(subject, rule, detail)` per violation; empty when valid.
    fn validate(&self) -> Vec<(String, String, String)> {
        ontology::validate(&self.inner, builtin())
            .into_iter()
            .map(|v| (v.subject.to_string(), v.rule.as_str().to_string(), v.detail))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("<uto.Graph with {} triples>", self.inner.len())
    }
}

fn groups(gs: Vec<TagGroup>) -> Vec<(String, Vec<String>)> {
    gs.into_iter()
        .map(|g| (g.key.text().to_string(), g.tags.iter().map(|t| t.text().to_string()).collect()))
        .collect()
}

/// Objects carrying `tag`, highest vote first: `[(object, vote)]`.
#[pyfunction]
fn objects_by_tag(graph: &PyGraph, tag: &str) -> Vec<(String, Option<u64>)> {
    query::objects_by_tag(tag, &graph.inner)
        .into_iter()
        .map(|h| (h.object.text().to_string(), h.vote_value()))
        .collect()
}

/// `[(tagger, [tag IRI])]`, one entry per tagging node.
#[pyfunction]
fn taggers_of_object(graph: &PyGraph, object: &str) -> PyResult<Vec<(String, Vec<String>)>> {
    let object = Iri::new(object).map_err(value_err)?;
    Ok(groups(query::taggers_of_object(&object, &graph.inner)))
}

/// `[(object, [tag IRI])]`, one entry per tagging node.
#[pyfunction]
fn objects_of_tagger(graph: &PyGraph, tagger: &str) -> Vec<(String, Vec<String>)> {
    groups(query::objects_of_tagger(tagger, &graph.inner))
}

/// Runs a query in the text form; returns `(variables, rows)`.
#[pyfunction]
fn run_query(graph: &PyGraph, text: &str) -> PyResult<(Vec<String>, Vec<Vec<String>>)> {
    let q = query::parse_query(text).map_err(value_err)?;
    let rs = query::eval(&q, &graph.inner).map_err(value_err)?;
    let rows = rs.rows.iter().map(|r| r.iter().map(|t| t.text().to_string()).collect()).collect();
    Ok((rs.vars, rows))
}

/// Crawls `site` from `seeds`, serving pages out of a fixture directory.
/// Returns the graph and the crawl counters.
#[pyfunction]
#[pyo3(signature = (site, seeds, fixtures_dir, workers=1, seed=0, max_pages=None))]
fn crawl(
    py: Python<'_>,
    site: &str,
    seeds: Vec<String>,
    fixtures_dir: &str,
    workers: usize,
    seed: u64,
    max_pages: Option<usize>,
) -> PyResult<(PyGraph, BTreeMap<String, String>)> {
    let site: Site = site.parse().map_err(value_err)?;
    let fetcher = FixtureFetcher::open(fixtures_dir).map_err(|e| PyIOError::new_err(e.to_string()))?;
    let mut policy = CrawlPolicy::for_site(site).with_workers(workers).with_seed(seed);
    if let Some(n) = max_pages {
        policy = policy.with_max_pages(n);
    }
    let (g, stats) = py
        .detach(|| {
            let seeds: Vec<&str> = seeds.iter().map(String::as_str).collect();
            let mut g = uto_core::Graph::new();
            crawler::crawl(&seeds, crawler::adapter_for(site), &fetcher, &policy, &mut g).map(|s| (g, s))
        })
        .map_err(value_err)?;
    let stats = crawler::CrawlStats::CSV_HEADER
        .iter()
        .map(|h| h.to_string())
        .zip(stats.csv_row())
        .collect();
    Ok((g.into(), stats))
}

fn tag_key(fold_tag_text: bool) -> TagKey {
    if fold_tag_text {
        TagKey::FoldedText
    } else {
        TagKey::Iri
    }
}

/// Assignments per tag.
#[pyfunction]
#[pyo3(signature = (graph, fold_tag_text=false))]
fn tag_histogram(graph: &PyGraph, fold_tag_text: bool) -> BTreeMap<String, u64> {
    analysis::tag_histogram_keyed(&graph.inner, tag_key(fold_tag_text)).counts().clone()
}

/// `[(label, unique_tags, cumulative_percent)]` over the bucket edges.
#[pyfunction]
#[pyo3(signature = (graph, edges=None, fold_tag_text=false))]
fn frequency_table(graph: &PyGraph, edges: Option<Vec<u64>>, fold_tag_text: bool) -> PyResult<Vec<(String, u64, f64)>> {
    let h = analysis::tag_histogram_keyed(&graph.inner, tag_key(fold_tag_text));
    let rows = analysis::frequency_table(&h, edges.as_deref().unwrap_or(&DEFAULT_EDGES)).map_err(value_err)?;
    Ok(rows.iter().map(|r| (r.label(), r.unique_count, r.cumulative_pct.value())).collect())
}

/// Per-site object, tagger and tag counts with their ratios, one dict per site.
#[pyfunction]
fn source_summary<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Vec<Bound<'py, PyDict>>> {
    analysis::source_summary(&graph.inner)
        .into_iter()
        .map(|s| {
            let d = PyDict::new(py);
            d.set_item("source", s.source)?;
            d.set_item("objects", s.objects)?;
            d.set_item("taggers", s.taggers)?;
            d.set_item("tags", s.tags)?;
            d.set_item("tag_per_object", s.tag_per_object.value())?;
            d.set_item("tag_per_tagger", s.tag_per_tagger.value())?;
            d.set_item("object_per_tagger", s.object_per_tagger.value())?;
            Ok(d)
        })
        .collect()
}

/// Tags with at least `min_count` assignments.
#[pyfunction]
#[pyo3(signature = (graph, min_count=1001, fold_tag_text=false))]
fn core_tags(graph: &PyGraph, min_count: u64, fold_tag_text: bool) -> Vec<String> {
    let h = analysis::tag_histogram_keyed(&graph.inner, tag_key(fold_tag_text));
    analysis::core_tags(&h, min_count).into_iter().collect()
}

/// Least-squares fit of log frequency on log rank: `(exponent, r_squared, points)`.
#[pyfunction]
#[pyo3(signature = (graph, fold_tag_text=false))]
fn fit_power_law(graph: &PyGraph, fold_tag_text: bool) -> PyResult<(f64, f64, usize)> {
    let h = analysis::tag_histogram_keyed(&graph.inner, tag_key(fold_tag_text));
    let fit = analysis::fit_power_law(&h).map_err(value_err)?;
    Ok((fit.exponent, fit.r_squared, fit.points))
}

/// Pair counts keyed by `(tag_a, tag_b)` with `tag_a < tag_b`.
#[pyfunction]
#[pyo3(signature = (graph, axis="object", fold_tag_text=false))]
fn cooccurrence(graph: &PyGraph, axis: &str, fold_tag_text: bool) -> PyResult<BTreeMap<(String, String), u64>> {
    let axis = match axis {
        "object" => Axis::Object,
        "tagger" => Axis::Tagger,
        other => return Err(PyValueError::new_err(format!("unknown axis {other:?}"))),
    };
    Ok(analysis::cooccurrence_keyed(&graph.inner, axis, tag_key(fold_tag_text)))
}

/// The ontology as RDF/XML.
#[pyfunction]
fn export_owl() -> String {
    ontology::export_owl(builtin())
}

#[pymodule]
fn uto(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(objects_by_tag, m)?)?;
    m.add_function(wrap_pyfunction!(taggers_of_object, m)?)?;
    m.add_function(wrap_pyfunction!(objects_of_tagger, m)?)?;
    m.add_function(wrap_pyfunction!(run_query, m)?)?;
    m.add_function(wrap_pyfunction!(crawl, m)?)?;
    m.add_function(wrap_pyfunction!(tag_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_table, m)?)?;
    m.add_function(wrap_pyfunction!(source_summary, m)?)?;
    m.add_function(wrap_pyfunction!(core_tags, m)?)?;
    m.add_function(wrap_pyfunction!(fit_power_law, m)?)?;
    m.add_function(wrap_pyfunction!(cooccurrence, m)?)?;
    m.add_function(wrap_pyfunction!(export_owl, m)?)?;
    Ok(())
}
