//! Python bindings for the `terqf` toolkit.
//!
//! Exposes the main types and operations: ternary forms with exact
//! representation counts, automorph groups and orbits, p-adic local densities
//! and Siegel counts, imaginary-quadratic class groups, the prelist/unique
//! solver, the theta-identity catalog, and the reproduction targets.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use terqf::automorphs::{
    automorph_group, essential_count, is_essentially_unique, orbit_partition,
};
use terqf::binaryqf;
use terqf::forms::TernaryForm;
use terqf::identities::{builtin_catalog, verify_catalog};
use terqf::localdensity::{local_density, siegel_assembly};
use terqf::prelist;
use terqf::reference;

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                n.as_f64().expect("JSON number").into_py(py)
            }
        }
        Value::String(s) => s.into_py(py),
        Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let json = serde_json::to_value(value)
        .map_err(|e| PyRuntimeError::new_err(format!("serialization failed: {e}")))?;
    json_to_py(py, &json)
}

/// Exact rationals cross the boundary as `fractions.Fraction`.
fn rational_to_py(py: Python<'_>, value: &BigRational) -> PyResult<PyObject> {
    let fraction = py.import_bound("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((value.to_string(),))?.into_py(py))
}

/// Discriminants are negative here; accept |D| as a convenience.
fn normalize_discriminant(d: i64) -> i64 {
    if d > 0 {
        -d
    } else {
        d
    }
}

/// A positive definite integral ternary quadratic form
/// ax² + by² + cz² + dyz + exz + fxy.
#[pyclass(name = "TernaryForm", frozen, eq, hash)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyTernaryForm {
    inner: TernaryForm,
}

impl PyTernaryForm {
    fn require_positive_definite(&self) -> PyResult<()> {
        if self.inner.is_positive_definite() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "form {} is not positive definite",
                self.inner
            )))
        }
    }
}

#[pymethods]
impl PyTernaryForm {
    #[new]
    fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        PyTernaryForm {
            inner: TernaryForm::new(a, b, c, d, e, f),
        }
    }

    /// Parse "a,b,c,d,e,f".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse::<TernaryForm>()
            .map(|inner| PyTernaryForm { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let f = &self.inner;
        format!(
            "TernaryForm({}, {}, {}, {}, {}, {})",
            f.a, f.b, f.c, f.d, f.e, f.f
        )
    }

    /// The six coefficients (a, b, c, d, e, f).
    #[getter]
    fn coefficients(&self) -> (i64, i64, i64, i64, i64, i64) {
        let f = &self.inner;
        (f.a, f.b, f.c, f.d, f.e, f.f)
    }

    /// Δ = 4abc + def − ad² − be² − cf².
    fn discriminant(&self) -> i64 {
        self.inner.discriminant()
    }

    fn is_positive_definite(&self) -> bool {
        self.inner.is_positive_definite()
    }

    /// The Gram matrix of 2f.
    fn gram(&self) -> [[i64; 3]; 3] {
        self.inner.gram()
    }

    fn evaluate(&self, x: i64, y: i64, z: i64) -> i64 {
        self.inner.evaluate(x, y, z)
    }

    /// R_f(n): the number of integer solutions of f(x,y,z) = n.
    fn representation_count(&self, n: i64) -> PyResult<u64> {
        self.require_positive_definite()?;
        Ok(self.inner.representation_count(n))
    }

    /// Every integer solution of f(x,y,z) = n, lexicographically sorted.
    fn representations(&self, n: i64) -> PyResult<Vec<[i64; 3]>> {
        self.require_positive_definite()?;
        Ok(self.inner.enumerate_representations(n).triples)
    }

    /// [R_f(0), R_f(1), …, R_f(n_max)] from a single sweep.
    fn theta_counts(&self, py: Python<'_>, n_max: i64) -> PyResult<Vec<u64>> {
        self.require_positive_definite()?;
        if n_max < 0 {
            return Err(PyValueError::new_err("n_max must be nonnegative"));
        }
        let form = self.inner;
        Ok(py.allow_threads(move || form.theta_counts(n_max)))
    }

    /// |Aut(f)|.
    fn aut_order(&self) -> PyResult<usize> {
        self.require_positive_definite()?;
        Ok(automorph_group(&self.inner).order())
    }

    /// The automorph group as a list of 3×3 integer matrices.
    fn automorphs(&self) -> PyResult<Vec<[[i64; 3]; 3]>> {
        self.require_positive_definite()?;
        Ok(automorph_group(&self.inner)
            .elements
            .iter()
            .map(|a| a.0)
            .collect())
    }

    /// The representations of n split into automorph orbits.
    fn orbits(&self, n: i64) -> PyResult<Vec<Vec<[i64; 3]>>> {
        self.require_positive_definite()?;
        Ok(orbit_partition(&self.inner, n).orbits)
    }

    /// The number of automorph orbits on the representations of n.
    fn essential_count(&self, n: i64) -> PyResult<usize> {
        self.require_positive_definite()?;
        Ok(essential_count(&self.inner, n))
    }

    /// True when the representations of n form a single automorph orbit.
    fn is_essentially_unique(&self, n: i64) -> PyResult<bool> {
        self.require_positive_definite()?;
        Ok(is_essentially_unique(&self.inner, n))
    }

    /// Every 1 ≤ n ≤ n_max represented essentially uniquely.
    fn scan_unique(&self, py: Python<'_>, n_max: i64) -> PyResult<Vec<i64>> {
        self.require_positive_definite()?;
        if n_max < 0 {
            return Err(PyValueError::new_err("n_max must be nonnegative"));
        }
        let form = self.inner;
        Ok(py.allow_threads(move || prelist::scan_unique(&form, n_max)))
    }

    /// The p-adic local density d_{f,p}(n) as an exact `Fraction`.
    fn local_density(&self, py: Python<'_>, p: u64, n: u64) -> PyResult<PyObject> {
        self.require_positive_definite()?;
        let result =
            local_density(&self.inner, p, n).map_err(|e| PyValueError::new_err(e.to_string()))?;
        rational_to_py(py, &result.value)
    }

    /// Exact representation count by the Siegel formula (idoneal forms).
    fn siegel_count(&self, py: Python<'_>, n: u64) -> PyResult<u64> {
        self.require_positive_definite()?;
        if n < 1 {
            return Err(PyValueError::new_err("the Siegel formula needs n >= 1"));
        }
        let form = self.inner;
        let assembly = py
            .allow_threads(move || siegel_assembly(&form, n))
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        if !assembly.total.is_integer() || assembly.total.is_negative() {
            return Err(PyRuntimeError::new_err(format!(
                "Siegel total {} is not a nonnegative integer",
                assembly.total
            )));
        }
        assembly
            .total
            .to_integer()
            .to_u64()
            .ok_or_else(|| PyRuntimeError::new_err("Siegel count exceeds u64"))
    }

    /// The full Siegel factor breakdown as a dict.
    fn siegel_explain(&self, py: Python<'_>, n: u64) -> PyResult<PyObject> {
        self.require_positive_definite()?;
        if n < 1 {
            return Err(PyValueError::new_err("the Siegel formula needs n >= 1"));
        }
        let form = self.inner;
        let assembly = py
            .allow_threads(move || siegel_assembly(&form, n))
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        json_to_py(py, &assembly.to_json())
    }

    /// Solve the shipped prelist pipeline for this form.
    fn prelist(&self, py: Python<'_>) -> PyResult<PyObject> {
        let config = prelist::shipped_config(&self.inner).ok_or_else(|| {
            PyValueError::new_err(format!("no shipped prelist config for form {}", self.inner))
        })?;
        let solution = py.allow_threads(move || prelist::solve_prelist(&config));
        serialize_to_py(py, &solution)
    }

    /// Prelist refined by the orbit test: the essentially unique members.
    fn unique_list(&self, py: Python<'_>) -> PyResult<PyObject> {
        let config = prelist::shipped_config(&self.inner).ok_or_else(|| {
            PyValueError::new_err(format!("no shipped prelist config for form {}", self.inner))
        })?;
        let solution = py.allow_threads(move || prelist::unique_from_prelist(&config));
        serialize_to_py(py, &solution)
    }
}

/// Class number h(D) of an imaginary quadratic discriminant.
#[pyfunction]
fn class_number(d: i64) -> PyResult<u64> {
    binaryqf::class_number(normalize_discriminant(d))
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Class group of D: dict with h, invariant factors, label, and reduced
/// representatives.
#[pyfunction]
fn class_group(py: Python<'_>, d: i64) -> PyResult<PyObject> {
    let d = normalize_discriminant(d);
    let group = binaryqf::class_group(d).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let representatives: Vec<[i64; 3]> = group
        .representatives
        .iter()
        .map(|g| [g.a, g.b, g.c])
        .collect();
    let dict = PyDict::new_bound(py);
    dict.set_item("d", d)?;
    dict.set_item("h", group.h)?;
    dict.set_item("structure", group.structure.clone())?;
    dict.set_item("label", group.label())?;
    dict.set_item("representatives", representatives)?;
    Ok(dict.into_py(py))
}

/// The complete catalog of discriminants with h(D) ≤ bound (1 ≤ bound ≤ 8).
#[pyfunction]
fn catalog(py: Python<'_>, bound: u64) -> PyResult<PyObject> {
    let entries = py
        .allow_threads(move || binaryqf::catalog_entries(bound))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    serialize_to_py(py, &entries)
}

/// Verify the built-in theta-identity catalog to n_max; list of verdicts.
#[pyfunction]
#[pyo3(signature = (n_max = 500))]
fn verify_identities(py: Python<'_>, n_max: u64) -> PyResult<PyObject> {
    let verdicts = py.allow_threads(move || verify_catalog(&builtin_catalog(), n_max));
    serialize_to_py(py, &verdicts)
}

/// Recompute a published table or theorem and diff against frozen data.
#[pyfunction]
fn reproduce(py: Python<'_>, target: &str) -> PyResult<PyObject> {
    let report = py
        .allow_threads(|| reference::reproduce(target))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    serialize_to_py(py, &report)
}

/// Every valid reproduction target id.
#[pyfunction]
fn reproduction_targets() -> Vec<&'static str> {
    reference::all_targets()
}

#[pymodule]
fn terqf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyTernaryForm>()?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(class_group, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(reproduction_targets, m)?)?;
    Ok(())
}
