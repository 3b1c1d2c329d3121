//! Python bindings: partitions, series over the Laurent ring, invariant
//! dimensions and the oracles.

use pyo3::exceptions::{PySyntaxError, PyValueError};
use pyo3::prelude::*;

use lsym_core::error::Error;
use lsym_core::expr::{eval_str, EvalConfig};
use lsym_core::invariants::{self, Group, InvariantQuery, PowerKind};
use lsym_core::oracles;
use lsym_core::partition::partitions_of;
use lsym_core::prob::{self as prob, RandomVariable};
use lsym_core::ring::{AdamsRing, Laurent, Rational};
use lsym_core::symseries::{self as sym, Basis};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } => PySyntaxError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

#[pyclass(name = "Partition", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(lsym_core::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<usize>) -> Self {
        PyPartition(lsym_core::Partition::new(parts))
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn distinct_entries(&self) -> usize {
        self.0.distinct_entries()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn z(&self) -> u128 {
        self.0.z_factor()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

/// A truncated symmetric power series over Laurent polynomials in named
/// indeterminates.
#[pyclass(name = "SymSeries", frozen, from_py_object)]
#[derive(Clone)]
struct PySymSeries {
    inner: sym::SymSeries<Laurent>,
    variables: Vec<String>,
}

impl PySymSeries {
    fn wrap(&self, inner: sym::SymSeries<Laurent>) -> Self {
        PySymSeries {
            inner,
            variables: self.variables.clone(),
        }
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.variables.clone();
        for v in &other.variables {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn scalar(&self, s: &str) -> PyResult<Laurent> {
        let cfg = EvalConfig {
            degree_bound: 0,
            variables: self.variables.clone(),
        };
        eval_str::<Laurent>(s, &cfg)
            .map_err(py_err)?
            .as_scalar()
            .ok_or_else(|| PyValueError::new_err(format!("`{s}` is not a scalar")))
    }
}

#[pymethods]
impl PySymSeries {
    /// Evaluates an expression such as `"exp(x*h_1) - e_2"`.
    #[staticmethod]
    #[pyo3(signature = (expr, degree, variables = Vec::new()))]
    fn parse(expr: &str, degree: usize, variables: Vec<String>) -> PyResult<Self> {
        let cfg = EvalConfig {
            degree_bound: degree,
            variables: variables.clone(),
        };
        let inner = eval_str::<Laurent>(expr, &cfg).map_err(py_err)?.into_series(degree);
        Ok(PySymSeries { inner, variables })
    }

    /// The basis element `b_τ`, e.g. `SymSeries.basis_element("s", [2, 1], 5)`.
    #[staticmethod]
    fn basis_element(basis: &str, parts: Vec<usize>, degree: usize) -> PyResult<Self> {
        let b: Basis = parse(basis)?;
        let inner = sym::basis_element(b, &lsym_core::Partition::new(parts), degree).map_err(py_err)?;
        Ok(PySymSeries {
            inner,
            variables: Vec::new(),
        })
    }

    #[getter]
    fn degree_bound(&self) -> usize {
        self.inner.degree_bound()
    }

    fn omega(&self) -> Self {
        self.wrap(self.inner.omega())
    }

    fn omega_tilde(&self) -> Self {
        self.wrap(self.inner.omega_tilde())
    }

    fn degree_flip(&self) -> Self {
        self.wrap(self.inner.degree_flip())
    }

    fn exp_sigma(&self) -> PyResult<Self> {
        Ok(self.wrap(sym::exp_sigma(&self.inner).map_err(py_err)?))
    }

    fn log_sigma(&self) -> PyResult<Self> {
        Ok(self.wrap(sym::log_sigma(&self.inner).map_err(py_err)?))
    }

    fn plethysm_p(&self, i: usize) -> PyResult<Self> {
        if i == 0 {
            return Err(PyValueError::new_err("plethysm_p needs i >= 1"));
        }
        Ok(self.wrap(sym::plethysm_p(i, &self.inner)))
    }

    /// `Exp_σ(r · Log_σ(self))` for a scalar expression `r`.
    fn pow_structure(&self, r: &str) -> PyResult<Self> {
        let r = self.scalar(r)?;
        Ok(self.wrap(sym::pow_structure(&self.inner, &r).map_err(py_err)?))
    }

    /// The Hall inner product, rendered as a scalar.
    fn hall_inner(&self, other: &Self) -> String {
        self.inner.hall_inner(&other.inner).to_string()
    }

    /// `[(parts, coefficient)]` in the given basis.
    #[pyo3(signature = (basis = "m"))]
    fn to_basis(&self, basis: &str) -> PyResult<Vec<(Vec<usize>, String)>> {
        let b: Basis = parse(basis)?;
        Ok(sym::to_basis(&self.inner, b)
            .into_iter()
            .map(|(tau, c)| (tau.parts().to_vec(), c.to_string()))
            .collect())
    }

    #[pyo3(signature = (basis = "m"))]
    fn render(&self, basis: &str) -> PyResult<String> {
        Ok(sym::render(&self.inner, parse(basis)?))
    }

    fn __add__(&self, other: &Self) -> Self {
        PySymSeries {
            inner: self.inner.add(&other.inner),
            variables: self.merged_vars(other),
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        PySymSeries {
            inner: self.inner.sub(&other.inner),
            variables: self.merged_vars(other),
        }
    }

    fn __mul__(&self, other: &Self) -> Self {
        PySymSeries {
            inner: self.inner.mul(&other.inner),
            variables: self.merged_vars(other),
        }
    }

    fn __neg__(&self) -> Self {
        self.wrap(self.inner.neg())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        sym::render(&self.inner, Basis::M)
    }

    fn __repr__(&self) -> String {
        format!("SymSeries({:?}, degree={})", sym::render(&self.inner, Basis::M), self.inner.degree_bound())
    }
}

#[pyfunction]
fn partitions(n: usize) -> Vec<Vec<usize>> {
    partitions_of(n).into_iter().map(|p| p.parts().to_vec()).collect()
}

#[pyfunction]
#[pyo3(signature = (group, n, parts, kind = "ext"))]
fn invariant_dim(group: &str, n: usize, parts: Vec<usize>, kind: &str) -> PyResult<u64> {
    let q = InvariantQuery::new(parse::<Group>(group)?, n, lsym_core::Partition::new(parts), parse::<PowerKind>(kind)?)
        .map_err(py_err)?;
    invariants::invariant_dim(&q).map_err(py_err)
}

#[pyfunction]
fn duality_check(n: usize, parts: Vec<usize>) -> PyResult<bool> {
    Ok(invariants::duality_check(n, &lsym_core::Partition::new(parts)).map_err(py_err)?.holds())
}

#[pyfunction]
fn multigraph_count(parts: Vec<usize>, loops: bool) -> u64 {
    oracles::multigraph_count(&lsym_core::Partition::new(parts), loops)
}

#[pyfunction]
#[pyo3(signature = (n, parts, kind = "ext"))]
fn weyl_ct_sp(n: usize, parts: Vec<usize>, kind: &str) -> PyResult<i64> {
    oracles::weyl_ct_sp_kind(n, &lsym_core::Partition::new(parts), parse(kind)?).map_err(py_err)
}

/// `(estimate, stderr)` of `E[∏ e_{τ_i}(M)]` over Haar measure.
#[pyfunction]
fn haar_mc_dim(py: Python<'_>, group: &str, n: usize, parts: Vec<usize>, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
    let group: Group = parse(group)?;
    let tau = lsym_core::Partition::new(parts);
    let e = py
        .detach(|| oracles::haar_mc_dim(group, n, &tau, samples, seed))
        .map_err(py_err)?;
    Ok((e.estimate, e.stderr))
}

/// `ω̃(E[Exp_σ(X h₁)]) == E[Exp_σ(-X h₁)]` for `X` given as `[(prob, value)]`
/// with values in the Laurent ring, e.g. `[("1/2", "x"), ("1/2", "x + y")]`.
#[pyfunction]
fn theorem_negation_check(outcomes: Vec<(String, String)>, degree: usize) -> PyResult<bool> {
    let outcomes = outcomes
        .iter()
        .map(|(p, v)| Ok((Rational::parse_scalar(p)?, Laurent::parse_scalar(v)?)))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(py_err)?;
    let x = RandomVariable::new(outcomes).map_err(py_err)?;
    Ok(prob::theorem_negation_check(&x, degree).map_err(py_err)?.holds)
}

#[pymodule]
pub fn lsym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PySymSeries>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_dim, m)?)?;
    m.add_function(wrap_pyfunction!(duality_check, m)?)?;
    m.add_function(wrap_pyfunction!(multigraph_count, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_ct_sp, m)?)?;
    m.add_function(wrap_pyfunction!(haar_mc_dim, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_negation_check, m)?)?;
    Ok(())
}
