//! Python module `kvn`. Points cross the boundary as strings such as
//! `"1/4,1/2"`; sequences use the `pre(period)` notation of the core.

use kvn_core::kvn::{enumerate_dyadics, kvn_forward, kvn_inverse, orbit_points};
use kvn_core::minkowski::{e_inverse, e_map, enumerate_rationals, phi, phi_inverse};
use kvn_core::stats::{cell_discrepancy, weyl_sum};
use kvn_core::tent::{final_orbit, upsilon};
use kvn_core::walsh::{walsh_eval, walsh_inner_product, WalshIndex};
use kvn_core::{Error, GeneratorSet, Limits, Point};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(kvn, IterationCapError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    if e.is_cap() {
        IterationCapError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn strings(points: Vec<Point>) -> Vec<String> {
    points.iter().map(ToString::to_string).collect()
}

/// Structural data of one simplex dimension.
#[pyclass(frozen)]
struct Simplex {
    gens: GeneratorSet,
}

impl Simplex {
    fn point(&self, s: &str) -> PyResult<Point> {
        let p: Point = s.parse().map_err(to_py)?;
        p.ensure_dim(self.gens.dim()).map_err(to_py)?;
        p.ensure_in_simplex().map_err(to_py)?;
        Ok(p)
    }

    fn map(&self, s: &str, f: fn(&GeneratorSet, &Point) -> kvn_core::Result<Point>) -> PyResult<String> {
        let p = self.point(s)?;
        f(&self.gens, &p).map(|q| q.to_string()).map_err(to_py)
    }
}

#[pymethods]
impl Simplex {
    /// `iter_cap` bounds every internal search; the default leaves the
    /// built-in limits.
    #[new]
    #[pyo3(signature = (n, iter_cap=None))]
    fn new(n: usize, iter_cap: Option<usize>) -> PyResult<Self> {
        let limits = iter_cap.map_or_else(Limits::default, Limits::uniform);
        let gens = GeneratorSet::with_limits(n, limits).map_err(to_py)?;
        Ok(Simplex { gens })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.gens.dim()
    }

    #[getter]
    fn v0(&self) -> String {
        self.gens.v0().to_string()
    }

    #[getter]
    fn v_minus_one(&self) -> String {
        self.gens.v_minus_one().to_string()
    }

    /// All structural matrices as a JSON string.
    fn matrices_json(&self) -> String {
        self.gens.to_json().to_string()
    }

    fn kvn(&self, point: &str) -> PyResult<String> {
        self.map(point, kvn_forward)
    }

    fn kvn_inverse(&self, point: &str) -> PyResult<String> {
        self.map(point, kvn_inverse)
    }

    fn e(&self, point: &str) -> PyResult<String> {
        self.map(point, e_map)
    }

    fn e_inverse(&self, point: &str) -> PyResult<String> {
        self.map(point, e_inverse)
    }

    fn phi(&self, point: &str) -> PyResult<String> {
        self.map(point, phi)
    }

    fn phi_inverse(&self, point: &str) -> PyResult<String> {
        self.map(point, phi_inverse)
    }

    fn final_orbit(&self, point: &str) -> PyResult<String> {
        let p = self.point(point)?;
        final_orbit(&p).map(|s| s.to_string()).map_err(to_py)
    }

    /// The point coded by an eventually periodic sequence such as `"01(1)"`.
    fn upsilon(&self, seq: &str) -> PyResult<String> {
        let a = seq.parse().map_err(to_py)?;
        upsilon(&self.gens, &a).map(|p| p.to_string()).map_err(to_py)
    }

    fn orbit(&self, point: &str, count: usize) -> PyResult<Vec<String>> {
        let p = self.point(point)?;
        orbit_points(&self.gens, &p, count).map(strings).map_err(to_py)
    }

    fn dyadics(&self, count: usize) -> PyResult<Vec<String>> {
        enumerate_dyadics(&self.gens, count).map(strings).map_err(to_py)
    }

    fn rationals(&self, count: usize) -> PyResult<Vec<String>> {
        enumerate_rationals(&self.gens, count).map(strings).map_err(to_py)
    }

    fn walsh(&self, m: u64, point: &str) -> PyResult<i8> {
        let p = self.point(point)?;
        walsh_eval(&self.gens, WalshIndex(m), &p).map_err(to_py)
    }

    /// Exact Weyl sum as a string fraction.
    fn weyl(&self, m: u64, point: &str, k: usize) -> PyResult<String> {
        let p = self.point(point)?;
        weyl_sum(&self.gens, WalshIndex(m), &p, k).map(|v| v.to_string()).map_err(to_py)
    }

    /// Maximal deviation of cell frequencies at `depth` from `2^-depth`.
    fn discrepancy(&self, points: Vec<String>, depth: usize) -> PyResult<String> {
        let pts = points.iter().map(|s| self.point(s)).collect::<PyResult<Vec<_>>>()?;
        cell_discrepancy(&pts, depth)
            .map(|r| r.max_abs_deviation.to_string())
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Simplex({})", self.gens.dim())
    }
}

#[pyfunction]
fn inner_product(m: u64, l: u64) -> String {
    walsh_inner_product(WalshIndex(m), WalshIndex(l)).to_string()
}

#[pymodule]
fn kvn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Simplex>()?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add("IterationCapError", m.py().get_type::<IterationCapError>())?;
    Ok(())
}
