//! Python bindings. Coefficient sequences cross the boundary as lists of
//! Python numbers (real or complex), constant term first.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use powseries::bench::{run_bench, BenchOp, BenchSpec};
use powseries::rng::InputKind;
use powseries::selftest::{run_selftest, Depth};
use powseries::sqrt::{choose_params, sqrt_planned_with};
use powseries::transform::{self, Direction};
use powseries::{FftEngine, Phase, Poly, RecipPlan, SeriesError, Spectrum, TransformLedger};

fn err(e: SeriesError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = E>, E: std::fmt::Display>(s: &str) -> PyResult<T> {
    s.parse()
        .map_err(|e: E| PyValueError::new_err(e.to_string()))
}

fn phase(name: &str) -> PyResult<Phase> {
    match name {
        "block" => Ok(Phase::Block),
        "base" => Ok(Phase::Base),
        other => Err(PyValueError::new_err(format!("unknown phase {other:?}"))),
    }
}

/// Transform counts by phase, direction and length.
#[pyclass(name = "Ledger")]
#[derive(Default)]
struct PyLedger {
    inner: TransformLedger,
}

#[pymethods]
impl PyLedger {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    /// Block-phase forward transforms of length `length`.
    fn forward(&self, length: usize) -> u64 {
        self.inner.forward(length)
    }

    /// Block-phase inverse transforms of length `length`.
    fn inverse(&self, length: usize) -> u64 {
        self.inner.inverse(length)
    }

    #[pyo3(signature = (phase_name = "block"))]
    fn total(&self, phase_name: &str) -> PyResult<u64> {
        let p = phase(phase_name)?;
        Ok(self.inner.total(p, Direction::Forward) + self.inner.total(p, Direction::Inverse))
    }

    #[pyo3(signature = (phase_name = "block"))]
    fn weighted_cost(&self, phase_name: &str) -> PyResult<f64> {
        Ok(self.inner.weighted_cost(phase(phase_name)?))
    }

    /// `{(phase, direction, length): count}` for every recorded transform.
    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (p, pname) in [(Phase::Block, "block"), (Phase::Base, "base")] {
            for (d, dname) in [
                (Direction::Forward, "forward"),
                (Direction::Inverse, "inverse"),
            ] {
                for (len, c) in self.inner.by_length(p, d) {
                    out.set_item((pname, dname, len), c)?;
                }
            }
        }
        Ok(out)
    }

    fn reset(&mut self) {
        self.inner = TransformLedger::new();
    }

    fn __repr__(&self) -> String {
        format!(
            "Ledger(block={}, base={})",
            self.inner.total(Phase::Block, Direction::Forward)
                + self.inner.total(Phase::Block, Direction::Inverse),
            self.inner.total(Phase::Base, Direction::Forward)
                + self.inner.total(Phase::Base, Direction::Inverse)
        )
    }
}

/// Runs `f` against the caller's ledger, or a throwaway one.
fn with_ledger<T>(
    ledger: Option<PyRefMut<'_, PyLedger>>,
    f: impl FnOnce(&mut TransformLedger) -> powseries::Result<T>,
) -> PyResult<T> {
    match ledger {
        Some(mut l) => f(&mut l.inner).map_err(err),
        None => f(&mut TransformLedger::new()).map_err(err),
    }
}

/// `f^{1/2} mod x^n` for `f(0) = 1`.
#[pyfunction]
#[pyo3(signature = (coeffs, n, blocks = None, ledger = None))]
fn sqrt(
    coeffs: Vec<Complex64>,
    n: usize,
    blocks: Option<usize>,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<Vec<Complex64>> {
    let f = Poly::new(coeffs);
    let plan = choose_params(n, blocks).map_err(err)?;
    with_ledger(ledger, |l| {
        sqrt_planned_with(FftEngine::global(), &f, &plan, l)
    })
    .map(Poly::into_coeffs)
}

/// `f^{-1} mod x^n` for `f(0) = 1`.
#[pyfunction]
#[pyo3(signature = (coeffs, n, blocks = None, ledger = None))]
fn recip(
    coeffs: Vec<Complex64>,
    n: usize,
    blocks: Option<usize>,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<Vec<Complex64>> {
    let f = Poly::new(coeffs);
    let plan = RecipPlan::choose(n, blocks).map_err(err)?;
    with_ledger(ledger, |l| {
        powseries::recip::recip_planned_with(FftEngine::global(), &f, &plan, l)
    })
    .map(Poly::into_coeffs)
}

/// `(g, h)` with `f = g^2 + h`, for monic `f` of even degree.
#[pyfunction]
#[pyo3(signature = (coeffs, ledger = None))]
fn sqrt_rem(
    coeffs: Vec<Complex64>,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
    let f = Poly::new(coeffs);
    let out = with_ledger(ledger, |l| powseries::sqrt_rem(&f, l))?;
    Ok((out.root.into_coeffs(), out.remainder.into_coeffs()))
}

/// Values of the polynomial at `exp(2 pi i j / n)`.
#[pyfunction]
#[pyo3(signature = (coeffs, n, ledger = None))]
fn forward(
    coeffs: Vec<Complex64>,
    n: usize,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<Vec<Complex64>> {
    let p = Poly::new(coeffs);
    with_ledger(ledger, |l| transform::forward(&p, n, l)).map(|s| s.values().to_vec())
}

#[pyfunction]
#[pyo3(signature = (values, ledger = None))]
fn inverse(
    values: Vec<Complex64>,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<Vec<Complex64>> {
    let s = Spectrum::new(values).map_err(err)?;
    with_ledger(ledger, |l| transform::inverse(&s, l)).map(Poly::into_coeffs)
}

/// Coefficients `n..2n` of `g * h`.
#[pyfunction]
#[pyo3(signature = (g, h, n, ledger = None))]
fn middle_product(
    g: Vec<Complex64>,
    h: Vec<Complex64>,
    n: usize,
    ledger: Option<PyRefMut<'_, PyLedger>>,
) -> PyResult<Vec<Complex64>> {
    let (g, h) = (Poly::new(g), Poly::new(h));
    with_ledger(ledger, |l| transform::middle_product(&g, &h, n, l)).map(Poly::into_coeffs)
}

#[pyfunction]
fn next_supported(n: usize) -> usize {
    transform::next_supported(n)
}

#[pyfunction]
fn is_supported(n: usize) -> bool {
    transform::is_supported(n)
}

/// `(r, m)` chosen for a square root to precision `n`.
#[pyfunction]
#[pyo3(signature = (n, blocks = None))]
fn sqrt_params(n: usize, blocks: Option<usize>) -> PyResult<(usize, usize)> {
    let p = choose_params(n, blocks).map_err(err)?;
    Ok((p.r, p.m))
}

/// `(s, m)` chosen for a reciprocal to precision `n`.
#[pyfunction]
#[pyo3(signature = (n, blocks = None))]
fn recip_params(n: usize, blocks: Option<usize>) -> PyResult<(usize, usize)> {
    let p = RecipPlan::choose(n, blocks).map_err(err)?;
    Ok((p.s, p.m))
}

/// Seeded random series with `f(0) = 1`; `dist` is `"uniform"` or `"damped"`.
#[pyfunction]
#[pyo3(signature = (seed, n, dist = "uniform"))]
fn random_series(seed: u64, n: usize, dist: &str) -> PyResult<Vec<Complex64>> {
    Ok(parse::<InputKind, _>(dist)?.series(seed, n).into_coeffs())
}

/// One benchmark record as a dict.
#[pyfunction(name = "bench")]
#[pyo3(signature = (op, n = 0, blocks = None, block_size = None, seed = 1, dist = "uniform"))]
fn bench_record<'py>(
    py: Python<'py>,
    op: &str,
    n: usize,
    blocks: Option<usize>,
    block_size: Option<usize>,
    seed: u64,
    dist: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = BenchSpec {
        op: parse::<BenchOp, _>(op)?,
        n,
        blocks,
        block_size,
        seed,
        input: parse::<InputKind, _>(dist)?,
    };
    let rec = py
        .detach(|| run_bench(FftEngine::global(), &spec))
        .map_err(err)?;
    let text = serde_json::to_string(&rec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// `(passed, lines)` from the invariant suites.
#[pyfunction]
#[pyo3(signature = (full = false))]
fn selftest(py: Python<'_>, full: bool) -> (bool, Vec<String>) {
    let depth = if full { Depth::Full } else { Depth::Quick };
    let report = py.detach(|| run_selftest(FftEngine::global(), depth));
    (
        report.passed(),
        report.suites.iter().map(ToString::to_string).collect(),
    )
}

#[pymodule]
#[pyo3(name = "powseries")]
fn powseries_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLedger>()?;
    m.add_function(wrap_pyfunction!(sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(recip, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_rem, m)?)?;
    m.add_function(wrap_pyfunction!(forward, m)?)?;
    m.add_function(wrap_pyfunction!(inverse, m)?)?;
    m.add_function(wrap_pyfunction!(middle_product, m)?)?;
    m.add_function(wrap_pyfunction!(next_supported, m)?)?;
    m.add_function(wrap_pyfunction!(is_supported, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_params, m)?)?;
    m.add_function(wrap_pyfunction!(recip_params, m)?)?;
    m.add_function(wrap_pyfunction!(random_series, m)?)?;
    m.add_function(wrap_pyfunction!(bench_record, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
