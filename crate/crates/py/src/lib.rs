//! Python bindings: symmetric matrices over finite fields, epr/pr sequences,
//! attainability enumeration, pattern catalogs, theorem checks, and codes.

use eprseq::codes::{self, LinearCode};
use eprseq::constructions;
use eprseq::enumerate::{self, EnumOptions, PruningMode};
use eprseq::pattern::{Catalog, FormPattern};
use eprseq::theorems::{self, Prefix};
use eprseq::{EprSequence, FieldSpec, IndexSet, SymMatrix};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::collections::BTreeMap;

fn err(e: eprseq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Symmetric matrix over GF(q).
#[pyclass(name = "Matrix", from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: SymMatrix,
}

#[pymethods]
impl PyMatrix {
    /// Parse the matrix text format (`q n` header, then n rows).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: SymMatrix::parse_text(text).map_err(err)?,
        })
    }

    /// Build a matrix from a field name, order, and row-major entries.
    #[staticmethod]
    #[pyo3(signature = (field, n, entries))]
    fn from_entries(field: &str, n: usize, entries: Vec<u32>) -> PyResult<PyMatrix> {
        let spec = FieldSpec::parse(field).map_err(err)?;
        Ok(PyMatrix {
            inner: SymMatrix::new(spec, n, entries).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.spec().name()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<u32> {
        if i >= self.inner.order() || j >= self.inner.order() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.get(i, j))
    }

    fn epr(&self) -> String {
        eprseq::epr::epr(&self.inner).to_string()
    }

    fn pr(&self) -> String {
        eprseq::epr::pr(&self.inner)
            .bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    fn det(&self) -> u32 {
        self.inner.det()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn inverse(&self) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: self.inner.inverse().map_err(err)?,
        })
    }

    /// Schur complement B/B[alpha] for 1-based indices alpha.
    fn schur_complement(&self, alpha: Vec<usize>) -> PyResult<PyMatrix> {
        let set = IndexSet::new(alpha).map_err(err)?;
        Ok(PyMatrix {
            inner: self.inner.schur_complement(&set).map_err(err)?,
        })
    }

    fn principal_submatrix(&self, alpha: Vec<usize>) -> PyResult<PyMatrix> {
        let set = IndexSet::new(alpha).map_err(err)?;
        Ok(PyMatrix {
            inner: self.inner.principal_submatrix(&set).map_err(err)?,
        })
    }

    fn scale(&self, c: u32) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: self.inner.scale(c).map_err(err)?,
        })
    }

    /// Apply a 1-based permutation of [n].
    fn permute(&self, pi: Vec<usize>) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: self.inner.permute(&pi).map_err(err)?,
        })
    }

    fn diag_congruence(&self, d: Vec<u32>) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: self.inner.diag_congruence(&d).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({} order {})", self.field(), self.order())
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }
}

/// Build a named construction (identity, zero, all-ones, j-minus-ki,
/// c5-composite, m-aana, m-aann, m-naaana).
#[pyfunction]
#[pyo3(signature = (name, field = "3", n = 4, k = None))]
fn construct(name: &str, field: &str, n: usize, k: Option<u32>) -> PyResult<PyMatrix> {
    let spec = FieldSpec::parse(field).map_err(err)?;
    Ok(PyMatrix {
        inner: constructions::build_named(name, &spec, n, k).map_err(err)?,
    })
}

fn enum_options(shards: usize, big: bool, alphabet_an_only: bool) -> EnumOptions {
    EnumOptions {
        alphabet_an_only,
        mode: PruningMode::Auto,
        shards,
        big,
        checkpoint: None,
        progress: false,
    }
}

/// Attained epr-sequences at (q, n) with one witness each.
/// Returns {"attained": {seq: matrix_text}, "visited": int, "pruned": int}.
#[pyfunction]
#[pyo3(signature = (q, n, alphabet_an_only = false, shards = 1, big = false))]
fn attainable(
    py: Python<'_>,
    q: u32,
    n: usize,
    alphabet_an_only: bool,
    shards: usize,
    big: bool,
) -> PyResult<Py<PyDict>> {
    let report = enumerate::attainable(q, n, &enum_options(shards, big, alphabet_an_only)).map_err(err)?;
    let d = PyDict::new(py);
    let attained: BTreeMap<String, String> = report
        .attained
        .iter()
        .map(|(s, w)| (s.to_string(), w.to_text()))
        .collect();
    d.set_item("attained", attained)?;
    d.set_item("visited", report.visited)?;
    d.set_item("pruned", report.pruned)?;
    Ok(d.into())
}

/// Verify the attained set against a built-in catalog ("f2" or "f3").
/// Returns {"missing": [...], "extra": [...]}.
#[pyfunction]
#[pyo3(signature = (q, n, catalog, shards = 1, big = false))]
fn verify_catalog(
    py: Python<'_>,
    q: u32,
    n: usize,
    catalog: &str,
    shards: usize,
    big: bool,
) -> PyResult<Py<PyDict>> {
    let cat = Catalog::by_name(catalog).map_err(err)?;
    let diff = enumerate::verify_catalog(q, n, &cat, &enum_options(shards, big, false)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("missing", diff.missing.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
    d.set_item("extra", diff.extra.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
    Ok(d.into())
}

/// Does a sequence match a form pattern like "NAAN(AAN)*A"?
#[pyfunction]
fn pattern_matches(pattern: &str, sequence: &str) -> PyResult<bool> {
    let p = FormPattern::parse(pattern).map_err(err)?;
    let s: EprSequence = sequence.parse().map_err(err)?;
    Ok(p.matches(&s))
}

/// All length-n sequences of a built-in catalog.
#[pyfunction]
fn catalog_expand(name: &str, n: usize) -> PyResult<Vec<String>> {
    let cat = Catalog::by_name(name).map_err(err)?;
    Ok(cat.enumerate(n).map_err(err)?.iter().map(|s| s.to_string()).collect())
}

/// Forbidden-pattern scan over characteristic p.
/// Returns a list of (rule, position, message).
#[pyfunction]
fn forbidden_scan(sequence: &str, p: u32) -> PyResult<Vec<(String, usize, String)>> {
    let s: EprSequence = sequence.parse().map_err(err)?;
    Ok(theorems::forbidden_scan(&s, p)
        .into_iter()
        .map(|v| (v.rule.to_string(), v.position, v.message))
        .collect())
}

/// Ramsey-derived position constraints for a prefix ("N", "NA", "AN").
/// Returns a list of (position, allowed_letters, provenance).
#[pyfunction]
fn ramsey_constraints(prefix: &str, q: u32, n: usize) -> PyResult<Vec<(usize, String, String)>> {
    let prefix = Prefix::parse(prefix).map_err(err)?;
    Ok(theorems::ramsey_constraints(prefix, q, n)
        .map_err(err)?
        .into_iter()
        .map(|c| {
            let letters: String = c.allowed.iter().map(|l| l.as_char()).collect();
            (c.position, letters, c.provenance)
        })
        .collect())
}

/// Analyze a linear code given in the generator text format (`q k n` header).
/// Returns n, k, min_distance, the epr(H^T H) bound, and its epr-sequence.
#[pyfunction]
fn analyze_code(py: Python<'_>, generator_text: &str) -> PyResult<Py<PyDict>> {
    let c = LinearCode::from_text(generator_text).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("q", c.spec().q())?;
    d.set_item("n", c.n())?;
    d.set_item("k", c.k())?;
    d.set_item("min_distance", c.min_distance().map_err(err)?)?;
    if c.k() < c.n() {
        let b = codes::epr_distance_bound(&c).map_err(err)?;
        d.set_item("bound", b.bound)?;
        d.set_item("epr", b.epr.to_string())?;
        d.set_item("tight", b.tight)?;
        let h = c.parity_check();
        if h.cols() > h.rows() && h.cols() <= 20 {
            d.set_item("spark", codes::spark(&h).map_err(err)?)?;
        }
    }
    Ok(d.into())
}

#[pymodule]
fn eprseq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(attainable, m)?)?;
    m.add_function(wrap_pyfunction!(verify_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_matches, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_expand, m)?)?;
    m.add_function(wrap_pyfunction!(forbidden_scan, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey_constraints, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_code, m)?)?;
    Ok(())
}
