//! Python bindings. Types and terms travel as strings in the usual surface
//! syntax; the calculus is one of `f`, `lmu2p`, `lmu2`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use typeiso::arena::{hyperforest_to_json, Hyperforest};
use typeiso::canon::{canonical_key, canonicalize};
use typeiso::iso::decide_iso;
use typeiso::lambdamu::{normalize, parse_term, typecheck, TypingContext};
use typeiso::toolkit::{index_build, index_query, IndexFile, SourceEntry};
use typeiso::types::parse_type;
use typeiso::witness::witness_for_iso;
use typeiso::{CalculusMode, Error, TypeExpr};

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn mode(calculus: &str) -> PyResult<CalculusMode> {
    CalculusMode::from_short_name(calculus)
        .ok_or_else(|| PyValueError::new_err(format!("unknown calculus {calculus:?}")))
}

fn ty(text: &str, calculus: &str) -> PyResult<TypeExpr> {
    parse_type(text, mode(calculus)?).map_err(err)
}

/// Parses a type and prints it back.
#[pyfunction]
#[pyo3(signature = (text, calculus = "lmu2"))]
fn parse(text: &str, calculus: &str) -> PyResult<String> {
    Ok(ty(text, calculus)?.to_string())
}

/// The canonical form of a type.
#[pyfunction]
#[pyo3(signature = (text, calculus = "lmu2"))]
fn canon(text: &str, calculus: &str) -> PyResult<String> {
    let (cf, _) = canonicalize(&ty(text, calculus)?, mode(calculus)?).map_err(err)?;
    Ok(cf.to_string())
}

/// Hex canonical key; equal keys mean isomorphic types.
#[pyfunction]
#[pyo3(signature = (text, calculus = "lmu2"))]
fn key(text: &str, calculus: &str) -> PyResult<String> {
    let (cf, _) = canonicalize(&ty(text, calculus)?, mode(calculus)?).map_err(err)?;
    Ok(hex::encode(canonical_key(&cf)))
}

#[pyfunction]
#[pyo3(signature = (a, b, calculus = "lmu2"))]
fn is_isomorphic(a: &str, b: &str, calculus: &str) -> PyResult<bool> {
    let v = decide_iso(&ty(a, calculus)?, &ty(b, calculus)?, mode(calculus)?).map_err(err)?;
    Ok(v.isomorphic)
}

/// `(forward, backward)` coercion terms, or `None` if not isomorphic.
#[pyfunction]
#[pyo3(signature = (a, b, calculus = "lmu2"))]
fn witness(a: &str, b: &str, calculus: &str) -> PyResult<Option<(String, String)>> {
    let w = witness_for_iso(&ty(a, calculus)?, &ty(b, calculus)?, mode(calculus)?).map_err(err)?;
    Ok(w.map(|w| (w.forward.to_string(), w.backward.to_string())))
}

/// Builds the witness and checks it: `(status, detail)`.
#[pyfunction]
#[pyo3(signature = (a, b, calculus = "lmu2", fuel = 10_000))]
fn verify_witness(a: &str, b: &str, calculus: &str, fuel: usize) -> PyResult<Option<(String, String)>> {
    let w = witness_for_iso(&ty(a, calculus)?, &ty(b, calculus)?, mode(calculus)?).map_err(err)?;
    Ok(w.map(|w| {
        let r = w.verify(fuel);
        (r.status.to_string(), r.detail)
    }))
}

/// The type of a closed term; free type variables are allowed.
#[pyfunction]
#[pyo3(signature = (term, calculus = "lmu2"))]
fn check_term(term: &str, calculus: &str) -> PyResult<String> {
    let t = parse_term(term).map_err(err)?;
    let ctx = TypingContext::with_tvars(mode(calculus)?, t.free_type_vars());
    Ok(typecheck(&ctx, &t).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (term, fuel = 10_000))]
fn normalize_term(term: &str, fuel: usize) -> PyResult<String> {
    let t = parse_term(term).map_err(err)?;
    Ok(normalize(&t, fuel).term.to_string())
}

/// The hyperforest of a type as a JSON string.
#[pyfunction]
#[pyo3(signature = (text, calculus = "lmu2"))]
fn arena_json(text: &str, calculus: &str) -> PyResult<String> {
    Ok(hyperforest_to_json(&Hyperforest::of_type(&ty(text, calculus)?)).to_string())
}

/// Index text for `(name, signature)` pairs.
#[pyfunction]
#[pyo3(signature = (entries, calculus = "lmu2"))]
fn build_index(entries: Vec<(String, String)>, calculus: &str) -> PyResult<String> {
    let entries: Vec<SourceEntry> = entries.into_iter().map(|(n, s)| SourceEntry::new(n, s)).collect();
    Ok(index_build(&entries, mode(calculus)?).map_err(err)?.to_text())
}

/// Names of the entries isomorphic to `query`.
#[pyfunction]
fn query_index(index: &str, query: &str) -> PyResult<Vec<String>> {
    let idx = IndexFile::from_text(index).map_err(err)?;
    let q = parse_type(query, idx.mode).map_err(err)?;
    Ok(index_query(&q, &idx).map_err(err)?.into_iter().map(|e| e.name.clone()).collect())
}

#[pymodule]
fn typeiso_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(canon, m)?)?;
    m.add_function(wrap_pyfunction!(key, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(check_term, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_term, m)?)?;
    m.add_function(wrap_pyfunction!(arena_json, m)?)?;
    m.add_function(wrap_pyfunction!(build_index, m)?)?;
    m.add_function(wrap_pyfunction!(query_index, m)?)?;
    Ok(())
}
