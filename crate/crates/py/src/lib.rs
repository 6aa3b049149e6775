//! Python bindings: load catalog or JSON input, compute fixed-point
//! numbers, spectral splits and certified zeta reports.
//!
//! Exact values cross the boundary as strings or JSON so nothing is
//! ever truncated; reports are JSON strings matching the CLI schema.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nilzeta::cli::{self, RunConfig};
use nilzeta::crystal;

fn to_py_err(e: nilzeta::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Crystallographic data with named maps, wrapping the exact engine.
#[pyclass]
struct System {
    data: crystal::CrystalData,
}

#[pymethods]
impl System {
    /// Load a published catalog entry by name.
    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        let data = crystal::catalog(name).map_err(to_py_err)?;
        Ok(System { data })
    }

    /// Parse the JSON input format (all numbers exact strings).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let data = crystal::parse_input(text, "python").map_err(to_py_err)?;
        Ok(System { data })
    }

    #[getter]
    fn name(&self) -> String {
        self.data.name.clone()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.data.dimension
    }

    #[getter]
    fn holonomy_order(&self) -> usize {
        self.data.holonomy.order()
    }

    #[getter]
    fn map_names(&self) -> Vec<String> {
        self.data.maps.keys().cloned().collect()
    }

    /// Validation report as a JSON string; strict mode makes torsion fatal.
    #[pyo3(signature = (strict = false))]
    fn validate(&self, strict: bool) -> String {
        let report = crystal::validate(&self.data, strict);
        serde_json::json!({
            "checks": report.checks,
            "overall": if report.overall() { "pass" } else { "fail" },
        })
        .to_string()
    }

    /// L(f^k) for k = 1..kmax as decimal strings.
    #[pyo3(signature = (map_name, kmax = 10))]
    fn lefschetz_numbers(&self, map_name: &str, kmax: usize) -> PyResult<Vec<String>> {
        let spec = self.data.map(map_name).map_err(to_py_err)?;
        (1..=kmax.max(1))
            .map(|k| {
                nilzeta::lefschetz_number(&self.data.holonomy, &spec.linear, k)
                    .map(|v| v.to_string())
                    .map_err(to_py_err)
            })
            .collect()
    }

    /// N(f^k) for k = 1..kmax as decimal strings.
    #[pyo3(signature = (map_name, kmax = 10))]
    fn nielsen_numbers(&self, map_name: &str, kmax: usize) -> PyResult<Vec<String>> {
        let spec = self.data.map(map_name).map_err(to_py_err)?;
        (1..=kmax.max(1))
            .map(|k| {
                nilzeta::nielsen_number(&self.data.holonomy, &spec.linear, k)
                    .map(|v| v.to_string())
                    .map_err(to_py_err)
            })
            .collect()
    }

    /// Spectral split report (modulus census, p/n, character, positive
    /// part) as a JSON string.
    fn split(&self, map_name: &str) -> PyResult<String> {
        self.run(map_name, cli::cmd_split, 10)
    }

    /// Fixed-point number table as a JSON string.
    #[pyo3(signature = (map_name, kmax = 10))]
    fn numbers(&self, map_name: &str, kmax: usize) -> PyResult<String> {
        self.run(map_name, cli::cmd_numbers, kmax)
    }

    /// Certified zeta report as a JSON string.
    #[pyo3(signature = (map_name, kmax = 10))]
    fn zeta(&self, map_name: &str, kmax: usize) -> PyResult<String> {
        self.run(map_name, cli::cmd_zeta, kmax)
    }
}

impl System {
    fn run(
        &self,
        map_name: &str,
        f: fn(&RunConfig, &mut dyn std::io::Write) -> nilzeta::Result<i32>,
        kmax: usize,
    ) -> PyResult<String> {
        // round-trip through the input format so the CLI pipeline
        // (validation included) is exactly what Python sees
        let json = serde_json::to_string(&crystal::to_input_json(&self.data)).unwrap();
        let dir = std::env::temp_dir().join(format!(
            "nilzeta-py-{}-{}",
            std::process::id(),
            self.data.name.replace('/', "_")
        ));
        std::fs::create_dir_all(&dir)
            .map_err(|e| PyValueError::new_err(format!("tempdir: {e}")))?;
        let path = dir.join("input.json");
        std::fs::write(&path, json).map_err(|e| PyValueError::new_err(format!("write: {e}")))?;
        let mut config = RunConfig::new(path.to_str().unwrap());
        config.map_name = Some(map_name.to_string());
        config.kmax = kmax.max(1);
        config.json = true;
        let mut buf = Vec::new();
        let code = f(&config, &mut buf).map_err(to_py_err)?;
        let _ = std::fs::remove_file(&path);
        let _ = std::fs::remove_dir(&dir);
        if code != cli::EXIT_OK {
            return Err(PyValueError::new_err(format!("exit code {code}")));
        }
        Ok(String::from_utf8(buf).unwrap())
    }
}

/// Names of the published catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    crystal::catalog_names()
        .into_iter()
        .map(str::to_string)
        .collect()
}

#[pymodule]
fn nilzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<System>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
