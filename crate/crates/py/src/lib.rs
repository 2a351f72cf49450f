//! Python bindings: the claim registry, the permutation-group type, and a handful of
//! the exact and modular primitives.

use std::path::PathBuf;

use m22v::claims::{self, ClaimReport, Config};
use m22v::elkies::{self, ExclusionConfig};
use m22v::exactpoly::arith::parse_rational;
use m22v::exactpoly::{self, bundled, IntPolynomial, Poly, RatPolynomial};
use m22v::ffpoly::{full_factor, FpPolynomial, PrimeField};
use m22v::newton::newton_polygon;
use m22v::permgrp::{CycleType, PermGroup, Permutation, DEFAULT_CLASS_CAP};
use m22v::special::verdict_for;
use m22v::Error;
use num_bigint::BigInt;
use pyo3::exceptions::{PyFileNotFoundError, PyKeyError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownClaim(_) => PyKeyError::new_err(e.to_string()),
        Error::MissingData(_) => PyFileNotFoundError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "ClaimReport", frozen, get_all)]
struct PyClaimReport {
    claim_id: String,
    status: String,
    /// JSON text.
    computed: String,
    /// JSON text.
    expected: String,
    provenance: String,
    runtime_ms: u64,
    seed: u64,
    json: String,
}

impl From<&ClaimReport> for PyClaimReport {
    fn from(r: &ClaimReport) -> Self {
        let provenance = serde_json::to_value(r.expected.provenance)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        PyClaimReport {
            claim_id: r.claim_id.clone(),
            status: r.status.to_string(),
            computed: r.computed.to_string(),
            expected: r.expected.value.to_string(),
            provenance,
            runtime_ms: r.runtime_ms,
            seed: r.seed,
            json: r.to_json_line(),
        }
    }
}

#[pymethods]
impl PyClaimReport {
    fn passed(&self) -> bool {
        self.status == "PASS"
    }

    fn __repr__(&self) -> String {
        format!("ClaimReport({} {} in {} ms)", self.claim_id, self.status, self.runtime_ms)
    }
}

/// `(id, description, expected runtime)` for every registered claim.
#[pyfunction]
fn list_claims() -> Vec<(String, String, String)> {
    claims::list_claims()
        .iter()
        .map(|c| (c.id.to_string(), c.description.to_string(), c.expected_runtime.to_string()))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (claim, data_dir=None, seed=0, threads=1, lam=None, checkpoint=None))]
fn verify(
    py: Python<'_>,
    claim: &str,
    data_dir: Option<PathBuf>,
    seed: u64,
    threads: usize,
    lam: Option<u64>,
    checkpoint: Option<PathBuf>,
) -> PyResult<Vec<PyClaimReport>> {
    let mut cfg = Config {
        seed,
        threads: threads.max(1),
        checkpoint,
        ..Config::default()
    };
    if let Some(d) = data_dir {
        cfg.data_dir = d;
    }
    if let Some(l) = lam {
        cfg.lambda = l;
    }
    let claim = claim.to_string();
    let reports = py.detach(move || claims::verify(&claim, &cfg)).map_err(py_err)?;
    Ok(reports.iter().map(PyClaimReport::from).collect())
}

#[pyclass(name = "PermGroup")]
struct PyPermGroup {
    inner: PermGroup,
}

fn perm(images: Vec<u32>) -> PyResult<Permutation> {
    Permutation::from_images(images).map_err(py_err)
}

#[pymethods]
impl PyPermGroup {
    /// Generators as image lists on `0..degree`.
    #[new]
    fn new(degree: usize, generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = generators.into_iter().map(perm).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPermGroup {
            inner: PermGroup::new(degree, gens).map_err(py_err)?,
        })
    }

    fn order(&self) -> num_bigint::BigUint {
        self.inner.order()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn contains(&self, images: Vec<u32>) -> PyResult<bool> {
        Ok(self.inner.contains(&perm(images)?))
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn stabilizer_orbit_lengths(&self, point: usize) -> PyResult<Vec<usize>> {
        self.inner.stabilizer_orbit_lengths(point).map_err(py_err)
    }

    #[pyo3(signature = (images, cap=DEFAULT_CLASS_CAP))]
    fn centralizer_order(&self, images: Vec<u32>, cap: usize) -> PyResult<u64> {
        self.inner.centralizer_order(&perm(images)?, cap).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.inner.degree(), self.inner.order())
    }
}

/// Genus of the `k`-set curve for inertia cycle types of degree `n`, e.g. "12.6.4".
#[pyfunction]
fn hypothetical_genus(n: usize, k: usize, types: Vec<String>) -> PyResult<u64> {
    let types = types
        .iter()
        .map(|t| CycleType::parse(t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    elkies::hypothetical_genus(n, k, &types).map_err(py_err)
}

#[pyfunction]
fn hasse_weil_bound(lam: u64, genus: u64) -> PyResult<u64> {
    elkies::hasse_weil_bound(lam, genus).map_err(py_err)
}

/// `(strict, inclusive)` counts of degree-`k` divisors of the bundled family over `F_lam`.
#[pyfunction]
#[pyo3(signature = (lam, k=4, threads=1))]
fn count_points(py: Python<'_>, lam: u64, k: usize, threads: usize) -> PyResult<(u64, u64)> {
    let mut cfg = ExclusionConfig::new(lam).map_err(py_err)?;
    cfg.k = k;
    cfg.threads = threads;
    let rep = py
        .detach(move || elkies::count_quartic_points(&bundled::f(), &cfg))
        .map_err(py_err)?;
    Ok((rep.strict, rep.inclusive))
}

/// Coefficient lists are low degree first.
#[pyfunction]
fn resultant(f: Vec<BigInt>, g: Vec<BigInt>) -> PyResult<BigInt> {
    exactpoly::resultant(&Poly::new(f), &Poly::new(g)).map_err(py_err)
}

#[pyfunction]
fn discriminant(f: Vec<BigInt>) -> PyResult<BigInt> {
    exactpoly::discriminant(&IntPolynomial::new(f)).map_err(py_err)
}

/// Monic irreducible factors `(coefficients, multiplicity)` of `f mod p`.
#[pyfunction]
fn factor_mod_p(coeffs: Vec<u64>, p: u64) -> PyResult<Vec<(Vec<u64>, u32)>> {
    let field = PrimeField::new(p).map_err(py_err)?;
    let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
    let fact = full_factor(&FpPolynomial::from_values(field, &reduced), 0).map_err(py_err)?;
    Ok(fact.factors.iter().map(|(g, m)| (g.values(), *m)).collect())
}

/// `(slope, length)` pairs; coefficients as rational strings such as "-23674275/2".
#[pyfunction]
fn newton_segments(coeffs: Vec<String>, p: u64) -> PyResult<Vec<(String, usize)>> {
    let c = coeffs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let np = newton_polygon(&RatPolynomial::new(c), p).map_err(py_err)?;
    Ok(np.segments.iter().map(|s| (s.slope.to_string(), s.length)).collect())
}

/// `(verdict, method)` for a monic integer polynomial at `p`.
#[pyfunction]
fn ramification_verdict(coeffs: Vec<BigInt>, p: u64) -> PyResult<(String, String)> {
    let v = verdict_for(&IntPolynomial::new(coeffs), p).map_err(py_err)?;
    let text = |x: serde_json::Value| x.as_str().map(String::from).unwrap_or_else(|| x.to_string());
    Ok((
        text(serde_json::to_value(&v.verdict).map_err(|e| PyValueError::new_err(e.to_string()))?),
        text(serde_json::to_value(v.method).map_err(|e| PyValueError::new_err(e.to_string()))?),
    ))
}

#[pymodule]
fn m22v_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClaimReport>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_function(wrap_pyfunction!(list_claims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hypothetical_genus, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_weil_bound, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(factor_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(newton_segments, m)?)?;
    m.add_function(wrap_pyfunction!(ramification_verdict, m)?)?;
    m.add("LAMBDA", elkies::LAMBDA)?;
    Ok(())
}
