//! Python bindings: exact scalars, root systems, representation data and the
//! verification pipelines, exposed through JSON-friendly wrappers.

// the pymethods macro expansion trips useless_conversion on PyResult returns
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lieosc::loper::{build_l_su, quadratic_residual, quadratic_residual_su, QuadraticSpec};
use lieosc::rootsys::{Family, RootSystem};
use lieosc::scalar::{parse_rational, Rational, Surd as CoreSurd};
use lieosc::suite;
use lieosc::{build_l, build_rep, su_oscillator_rep, Error};

fn map_err(e: Error) -> PyErr {
    match e {
        Error::InvalidRank { .. }
        | Error::InvalidScalar(_)
        | Error::CutoffTooSmall(_)
        | Error::FamilyMismatch(_)
        | Error::Pole(_)
        | Error::IndexRange(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn parse_family(family: &str) -> PyResult<Family> {
    Family::parse(family).map_err(map_err)
}

fn parse_rat(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(map_err)
}

/// Exact scalar in the ring of Gaussian-rational combinations of square
/// roots of squarefree integers.
#[pyclass]
#[derive(Clone)]
struct Surd {
    inner: CoreSurd,
}

#[pymethods]
impl Surd {
    /// Build from raw (radicand, re, im) triples; rationals as "p/q" strings.
    #[new]
    fn new(terms: Vec<(i64, String, String)>) -> PyResult<Self> {
        let raw = terms
            .into_iter()
            .map(|(d, re, im)| Ok((d, parse_rat(&re)?, parse_rat(&im)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Surd {
            inner: CoreSurd::normalize(raw).map_err(map_err)?,
        })
    }

    #[staticmethod]
    fn sqrt(n: i64) -> PyResult<Self> {
        Ok(Surd {
            inner: CoreSurd::sqrt_int(n).map_err(map_err)?,
        })
    }

    #[staticmethod]
    fn rational(s: &str) -> PyResult<Self> {
        Ok(Surd {
            inner: CoreSurd::from_rational(parse_rat(s)?),
        })
    }

    fn __add__(&self, other: &Surd) -> Surd {
        Surd {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Surd) -> Surd {
        Surd {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Surd) -> Surd {
        Surd {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> Surd {
        Surd {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &Surd) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Surd({})", self.inner)
    }

    fn conj(&self) -> Surd {
        Surd {
            inner: self.inner.conj(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Numeric value as a complex number.
    fn to_complex(&self) -> (f64, f64) {
        self.inner.to_complex()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("scalar serialization")
    }
}

#[pyfunction]
fn algebra_dim(family: &str, rank: usize) -> PyResult<usize> {
    lieosc::algebra_dim(parse_family(family)?, rank).map_err(map_err)
}

#[pyfunction]
fn positive_roots_json(family: &str, rank: usize) -> PyResult<String> {
    let rs = RootSystem::new(parse_family(family)?, rank).map_err(map_err)?;
    Ok(rs.to_json().to_string())
}

#[pyfunction]
fn gen_rep_json(family: &str, rank: usize) -> PyResult<String> {
    let rep = build_rep(parse_family(family)?, rank).map_err(map_err)?;
    let js = serde_json::json!({
        "family": rep.family.letter().to_ascii_uppercase().to_string(),
        "rank": rep.rank,
        "dim_v": rep.dim_v,
        "metric": rep.metric.to_json(),
        "basis_x": rep.basis_x.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
    });
    Ok(js.to_string())
}

/// True when the quadratic relation of the family's L-operator holds exactly
/// on its interior.
#[pyfunction]
#[pyo3(signature = (family, rank, cutoff=None))]
fn check_quadratic(family: &str, rank: usize, cutoff: Option<usize>) -> PyResult<bool> {
    let family = parse_family(family)?;
    if family == Family::A {
        let rep = su_oscillator_rep(rank + 1, cutoff.unwrap_or(suite::DEFAULT_CUTOFF))
            .map_err(map_err)?;
        let l = build_l_su(&rep).map_err(map_err)?;
        return Ok(quadratic_residual_su(&rep, &l).pass);
    }
    let rep = build_rep(family, rank).map_err(map_err)?;
    let op = suite::oscillator_for(&rep, cutoff).map_err(map_err)?;
    let l = build_l(&rep, &op).map_err(map_err)?;
    let spec = QuadraticSpec::for_l(&l).map_err(map_err)?;
    Ok(quadratic_residual(&l, &spec).pass)
}

/// True when the Yang-Baxter equation holds exactly at the given rational
/// parameters.
#[pyfunction]
fn check_ybe(family: &str, rank: usize, u: &str, v: &str, eta: &str) -> PyResult<bool> {
    let rep = build_rep(parse_family(family)?, rank).map_err(map_err)?;
    let line = lieosc::check_ybe(&rep, &parse_rat(u)?, &parse_rat(v)?, &parse_rat(eta)?)
        .map_err(map_err)?;
    Ok(line.pass)
}

/// True when the single-site RTT relation holds exactly at the given
/// rational parameters.
#[pyfunction]
#[pyo3(signature = (family, rank, u, v, eta, cutoff=None))]
fn check_rtt(
    family: &str,
    rank: usize,
    u: &str,
    v: &str,
    eta: &str,
    cutoff: Option<usize>,
) -> PyResult<bool> {
    let family = parse_family(family)?;
    let rep = build_rep(family, rank).map_err(map_err)?;
    let op = suite::oscillator_for(&rep, cutoff).map_err(map_err)?;
    let l = build_l(&rep, &op).map_err(map_err)?;
    let line =
        lieosc::check_rtt(&rep, &l, &parse_rat(u)?, &parse_rat(v)?, &parse_rat(eta)?)
            .map_err(map_err)?;
    Ok(line.pass)
}

/// Full verification pipeline; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (family, rank, cutoff=None, seed=42))]
fn verify_all_json(family: &str, rank: usize, cutoff: Option<usize>, seed: u64) -> PyResult<String> {
    let report =
        suite::verify_all(parse_family(family)?, rank, cutoff, seed).map_err(map_err)?;
    Ok(report.to_json_string())
}

#[pymodule]
fn lieosc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Surd>()?;
    m.add_function(wrap_pyfunction!(algebra_dim, m)?)?;
    m.add_function(wrap_pyfunction!(positive_roots_json, m)?)?;
    m.add_function(wrap_pyfunction!(gen_rep_json, m)?)?;
    m.add_function(wrap_pyfunction!(check_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(check_ybe, m)?)?;
    m.add_function(wrap_pyfunction!(check_rtt, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all_json, m)?)?;
    Ok(())
}
