use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use liechains::catalog::{CatalogSpec, FAMILIES};
use liechains::claims::{check_chain, Claim};
use liechains::io::AlgebraFile;
use liechains::lattice::{LatticeBudget, SubalgebraLattice};
use liechains::report::{InvariantReport, Method};
use liechains::verify::{self as suites_mod, VerifyConfig};
use liechains::{Error, FieldSpec};

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownChain(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(text: Option<&str>) -> PyResult<LatticeBudget> {
    match text {
        Some(t) => LatticeBudget::parse(t).map_err(err),
        None => Ok(LatticeBudget::default()),
    }
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A Lie algebra with its named subspaces and chains.
#[pyclass(name = "LieAlgebra", module = "liechains")]
struct PyLieAlgebra {
    file: AlgebraFile,
}

#[pymethods]
impl PyLieAlgebra {
    /// Parse a `liealg/1` document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra { file: AlgebraFile::parse(text).map_err(err)? })
    }

    /// Build a catalog algebra, e.g. `from_catalog("sl2", "GF(5)")`.
    #[staticmethod]
    #[pyo3(signature = (family, field = "Q"))]
    fn from_catalog(family: &str, field: &str) -> PyResult<Self> {
        let field: FieldSpec = field.parse().map_err(err)?;
        let alg = CatalogSpec::new(family.parse().map_err(err)?, field).make().map_err(err)?;
        Ok(PyLieAlgebra { file: AlgebraFile::new(alg) })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.file.algebra.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.file.algebra.field().to_string()
    }

    #[getter]
    fn chains(&self) -> Vec<String> {
        self.file.chains.keys().cloned().collect()
    }

    fn to_json(&self) -> String {
        self.file.to_json_string()
    }

    /// `report/1` invariants as a dict.
    #[pyo3(signature = (method = "auto", budget = None))]
    fn invariants(&self, py: Python<'_>, method: &str, budget: Option<&str>) -> PyResult<Py<PyAny>> {
        let method: Method = method.parse().map_err(err)?;
        let b = self::budget(budget)?;
        let r = py.detach(|| InvariantReport::compute(&self.file.algebra, method, &b)).map_err(err)?;
        json_to_py(py, &r.to_json())
    }

    /// Counts and chain lengths from the full subalgebra lattice (GF(p) only).
    #[pyo3(signature = (budget = None))]
    fn lattice_summary(&self, py: Python<'_>, budget: Option<&str>) -> PyResult<Py<PyAny>> {
        let b = self::budget(budget)?;
        let lat = py.detach(|| SubalgebraLattice::enumerate(&self.file.algebra, &b)).map_err(err)?;
        let v = serde_json::json!({
            "nodes": lat.len(),
            "ideals": lat.ideal_flags().iter().filter(|&&x| x).count(),
            "maximal_subalgebras": lat.maximal_subalgebras().len(),
            "ell": lat.ell(),
            "minmax": lat.minmax().length(),
            "modl": lat.modl().length(),
            "qil": lat.qil().length(),
            "frattini_dim": lat.frattini().dim(),
        });
        json_to_py(py, &v.to_string())
    }

    /// Check a named chain against `maximal`, `chief`, `modular` or `quasiideal`.
    #[pyo3(signature = (chain, claim, budget = None))]
    fn check_chain(&self, py: Python<'_>, chain: &str, claim: &str, budget: Option<&str>) -> PyResult<Py<PyAny>> {
        let claim: Claim = claim.parse().map_err(err)?;
        let members = self.file.chain(chain).map_err(err)?;
        let b = self::budget(budget)?;
        let v = py.detach(|| check_chain(&self.file.algebra, &members, claim, &b)).map_err(err)?;
        let out = serde_json::json!({ "holds": v.holds(), "first_failure": v.first_failure(), "verdict": v });
        json_to_py(py, &out.to_string())
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(dim={}, field={})", self.dim(), self.field())
    }
}

/// Run verification suites; an empty list runs all of them.
#[pyfunction]
#[pyo3(name = "verify", signature = (suites = Vec::new(), seed = None, random = None))]
fn run_verify(py: Python<'_>, suites: Vec<String>, seed: Option<u64>, random: Option<usize>) -> PyResult<Py<PyAny>> {
    let mut cfg = VerifyConfig::default();
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = random {
        cfg.random_count = n;
    }
    let names: Vec<&str> = suites.iter().map(String::as_str).collect();
    let r = py.detach(|| suites_mod::run(&names, &cfg)).map_err(err)?;
    json_to_py(py, &r.to_json())
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    suites_mod::suite_names()
}

#[pyfunction]
fn catalog_families() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name).collect()
}

#[pymodule]
#[pyo3(name = "liechains")]
fn liechains_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_families, m)?)?;
    Ok(())
}
