//! Python bindings for `tmwords`.
//!
//! Words can be passed as `Word` objects, digit strings (`"0121"`,
//! or `"0,11,3"` for letters above 9) or lists of ints.

use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tmwords::binomial;
use tmwords::host::HostStrategy;
use tmwords::periodicity::{self, DEFAULT_BUDGET_MB};
use tmwords::table;
use tmwords::tm::{self, CounterexampleCase};
use tmwords::verify::{self, Suite, SuiteConfig};
use tmwords::{Error, Morphism, Word};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::InsufficientPrefix { .. } | Error::Budget { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn or_py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for tmwords::Result<T> {
    fn or_py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A finite word over `{0, ..., m-1}`.
#[pyclass(name = "Word", eq, hash, frozen, skip_from_py_object, module = "pytmwords")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord {
    inner: Word,
}

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (letters = None))]
    fn new(letters: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        Ok(PyWord {
            inner: match letters {
                Some(obj) => to_word(obj)?,
                None => Word::empty(),
            },
        })
    }

    fn letters(&self) -> Vec<u8> {
        self.inner.letters().to_vec()
    }

    fn render(&self, m: usize) -> String {
        self.inner.render(m)
    }

    fn concat(&self, other: &Bound<'_, PyAny>) -> PyResult<PyWord> {
        Ok(PyWord {
            inner: self.inner.concat(&to_word(other)?),
        })
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyWord> {
        self.concat(other)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.inner)
    }
}

/// A morphism given by the images of `0, ..., m-1`.
#[pyclass(name = "Morphism", frozen, module = "pytmwords")]
struct PyMorphism {
    inner: Morphism,
}

#[pymethods]
impl PyMorphism {
    #[new]
    fn new(images: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let images = images.iter().map(to_word).collect::<PyResult<Vec<_>>>()?;
        Ok(PyMorphism {
            inner: Morphism::new(images).or_py()?,
        })
    }

    /// `σ_m`.
    #[staticmethod]
    fn sigma(m: usize) -> PyResult<Self> {
        Ok(PyMorphism {
            inner: tm::sigma(m).or_py()?,
        })
    }

    #[getter]
    fn alphabet_size(&self) -> usize {
        self.inner.alphabet_size()
    }

    fn images(&self) -> Vec<PyWord> {
        self.inner.images().iter().map(|w| PyWord { inner: w.clone() }).collect()
    }

    fn is_parikh_constant(&self) -> bool {
        self.inner.is_parikh_constant()
    }

    fn apply(&self, w: &Bound<'_, PyAny>) -> PyResult<PyWord> {
        Ok(PyWord {
            inner: self.inner.apply(&to_word(w)?).or_py()?,
        })
    }

    fn fixed_point_prefix(&self, seed: u8, length: usize) -> PyResult<PyWord> {
        let seed = tmwords::Letter::new(seed, self.inner.alphabet_size()).or_py()?;
        Ok(PyWord {
            inner: self.inner.fixed_point_prefix(seed, length).or_py()?,
        })
    }
}

fn to_word(obj: &Bound<'_, PyAny>) -> PyResult<Word> {
    if let Ok(w) = obj.extract::<PyRef<'_, PyWord>>() {
        return Ok(w.inner.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return Word::parse(&s).or_py();
    }
    if let Ok(letters) = obj.extract::<Vec<u8>>() {
        return Ok(Word::from_letters(letters));
    }
    Err(PyValueError::new_err("expected a Word, a digit string or a list of letters"))
}

fn alphabet(m: Option<usize>, words: &[&Word]) -> usize {
    m.unwrap_or_else(|| words.iter().map(|w| w.min_alphabet()).max().unwrap_or(2).max(2))
}

/// Number of occurrences of `v` as a subsequence of `u`.
#[pyfunction]
fn binom_words(u: &Bound<'_, PyAny>, v: &Bound<'_, PyAny>) -> PyResult<u128> {
    Ok(binomial::binom_words(&to_word(u)?, &to_word(v)?).or_py()?.get())
}

/// `Ψ_k(u)`: coefficients for all words of length 1..k in length-lex order.
#[pyfunction]
#[pyo3(signature = (u, k, m = None))]
fn extended_parikh(u: &Bound<'_, PyAny>, k: usize, m: Option<usize>) -> PyResult<Vec<u128>> {
    let u = to_word(u)?;
    let m = alphabet(m, &[&u]);
    let psi = binomial::extended_parikh(&u, k, m).or_py()?;
    Ok(psi.counts().iter().map(|c| c.get()).collect())
}

#[pyfunction]
#[pyo3(signature = (u, v, k, m = None))]
fn equivalent_k(u: &Bound<'_, PyAny>, v: &Bound<'_, PyAny>, k: usize, m: Option<usize>) -> PyResult<bool> {
    let (u, v) = (to_word(u)?, to_word(v)?);
    let m = alphabet(m, &[&u, &v]);
    binomial::equivalent_k(&u, &v, k, m).or_py()
}

/// First `length` letters of `t_m`.
#[pyfunction]
fn tm_prefix(m: usize, length: usize) -> PyResult<PyWord> {
    Ok(PyWord {
        inner: tm::tm_prefix(m, length).or_py()?,
    })
}

#[pyfunction]
fn digit_sum_letter(m: usize, i: u64) -> u8 {
    tm::digit_sum_letter(m, i)
}

#[pyfunction]
fn abelian_closed(m: usize, n: usize) -> PyResult<u64> {
    tm::abelian_closed(m, n).or_py()
}

#[pyfunction]
fn binomial2_closed(m: usize, n: usize) -> PyResult<u64> {
    tm::binomial2_closed(m, n).or_py()
}

#[pyfunction]
fn tm2_binomial_closed(k: usize, n: usize) -> PyResult<u64> {
    tm::tm2_binomial_closed(k, n).or_py()
}

/// `[(n, b_{t_m,k}(n)) for n in range(n_min, n_max + 1)]`.
#[pyfunction]
fn complexity_profile(py: Python<'_>, m: usize, k: usize, n_min: usize, n_max: usize) -> PyResult<Vec<(usize, u64)>> {
    if n_min > n_max {
        return Err(PyValueError::new_err("empty range"));
    }
    let source = tm::tm_source(m).or_py()?;
    let table = py
        .detach(|| table::complexity_profile(&source, k, m, n_min..=n_max, &HostStrategy::Cover))
        .or_py()?;
    Ok(table.rows().map(|r| (r.n, r.value)).collect())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Outcome of the quoted counterexample pair, and of the corrected one
/// with `corrected=True`.
#[pyfunction]
#[pyo3(signature = (corrected = false))]
fn counterexample<'py>(py: Python<'py>, corrected: bool) -> PyResult<Bound<'py, PyDict>> {
    let case = if corrected {
        CounterexampleCase::corrected()
    } else {
        CounterexampleCase::as_stated()
    };
    let o = case.evaluate().or_py()?;
    let d = PyDict::new(py);
    d.set_item("u", o.u.to_string())?;
    d.set_item("v", o.v.to_string())?;
    d.set_item("u_is_factor", o.u_is_factor)?;
    d.set_item("v_is_factor", o.v_is_factor)?;
    d.set_item("equivalent2", o.equivalent2)?;
    d.set_item("holds", o.holds())?;
    Ok(d)
}

/// Runs a verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, m = None, extra_n = Vec::new()))]
fn run_suite<'py>(py: Python<'py>, suite: &str, m: Option<usize>, extra_n: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().or_py()?;
    let config = SuiteConfig {
        m,
        extra_n,
        ..SuiteConfig::default()
    };
    let report = py.detach(|| verify::run_suite(suite, &config)).or_py()?;
    json_to_py(py, &report.to_json())
}

/// Periodicity scan of `b_{t_m,k}` for `k >= 3`; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (m, k, n_max, budget_mb = DEFAULT_BUDGET_MB))]
fn conjecture_scan<'py>(py: Python<'py>, m: usize, k: usize, n_max: usize, budget_mb: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| periodicity::conjecture_scan(m, k, n_max, budget_mb))
        .or_py()?;
    json_to_py(py, &serde_json::to_string(&report).expect("report serializes"))
}

#[pymodule]
fn pytmwords(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(binom_words, m)?)?;
    m.add_function(wrap_pyfunction!(extended_parikh, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent_k, m)?)?;
    m.add_function(wrap_pyfunction!(tm_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(digit_sum_letter, m)?)?;
    m.add_function(wrap_pyfunction!(abelian_closed, m)?)?;
    m.add_function(wrap_pyfunction!(binomial2_closed, m)?)?;
    m.add_function(wrap_pyfunction!(tm2_binomial_closed, m)?)?;
    m.add_function(wrap_pyfunction!(complexity_profile, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_scan, m)?)?;
    Ok(())
}
