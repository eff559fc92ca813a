//! Python bindings: `Ring` and `Ideal` classes plus the corpus verifier.

use std::collections::BTreeMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ringlab::classify;
use ringlab::expr::{parse_element, parse_element_list};
use ringlab::factorize::{self, FactorClass};
use ringlab::ring::{build_product, build_quotient, build_trivial_extension, build_zmod};
use ringlab::spec::parse_spec;
use ringlab::verify::{default_corpus, run_corpus};
use ringlab::{Error, Ideal, Limits, ModuleTable, RingTable};

create_exception!(ringlab, RinglabError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ImproperIdeal | Error::InvalidArgument(_) | Error::RingMismatch => {
            PyValueError::new_err(e.to_string())
        }
        _ => RinglabError::new_err(e.to_string()),
    }
}

/// Generators given as an expression list (`"x, y^2"`) or element ids.
#[derive(FromPyObject)]
enum Gens {
    Text(String),
    Ids(Vec<usize>),
}

#[pyclass(frozen, name = "Ring", module = "ringlab")]
struct PyRing {
    inner: Arc<RingTable>,
    named: BTreeMap<String, Ideal>,
}

#[pyclass(frozen, name = "Ideal", module = "ringlab")]
struct PyIdeal {
    ring: Arc<RingTable>,
    inner: Ideal,
}

impl PyRing {
    fn wrap(ring: Arc<RingTable>) -> Self {
        PyRing {
            inner: ring,
            named: BTreeMap::new(),
        }
    }

    fn ideal_of(&self, i: Ideal) -> PyIdeal {
        PyIdeal {
            ring: Arc::clone(&self.inner),
            inner: i,
        }
    }

    fn own<'a>(&self, i: &'a PyIdeal) -> PyResult<&'a Ideal> {
        if Arc::ptr_eq(&self.inner, &i.ring) {
            Ok(&i.inner)
        } else {
            Err(to_py(Error::RingMismatch))
        }
    }

    fn resolve(&self, gens: Gens) -> PyResult<Vec<usize>> {
        match gens {
            Gens::Text(s) => parse_element_list(&self.inner, &s).map_err(to_py),
            Gens::Ids(ids) => {
                if let Some(bad) = ids.iter().find(|&&x| x >= self.inner.size()) {
                    return Err(PyValueError::new_err(format!("no element with id {bad}")));
                }
                Ok(ids)
            }
        }
    }

    fn wrap_all(&self, ideals: Vec<Ideal>) -> Vec<PyIdeal> {
        ideals.into_iter().map(|i| self.ideal_of(i)).collect()
    }

    fn verdict(&self, v: factorize::OafVerdict) -> (bool, Option<PyIdeal>) {
        (v.holds, v.witness.map(|w| self.ideal_of(w)))
    }
}

#[pymethods]
impl PyRing {
    /// Builds a ring from a JSON spec document.
    #[new]
    #[pyo3(signature = (spec_json, max_ring_size=None))]
    fn new(spec_json: &str, max_ring_size: Option<usize>) -> PyResult<Self> {
        let mut limits = Limits::default();
        if let Some(m) = max_ring_size {
            limits.max_ring_size = m;
        }
        let doc = parse_spec(spec_json).map_err(to_py)?;
        let (inner, named) = doc.build(limits).map_err(to_py)?;
        Ok(PyRing { inner, named })
    }

    #[staticmethod]
    fn zmod(n: usize) -> PyResult<Self> {
        Ok(Self::wrap(build_zmod(n, Limits::default()).map_err(to_py)?))
    }

    #[staticmethod]
    fn product(factors: Vec<PyRef<'_, PyRing>>) -> PyResult<Self> {
        let tables: Vec<Arc<RingTable>> = factors.iter().map(|r| Arc::clone(&r.inner)).collect();
        Ok(Self::wrap(build_product(&tables).map_err(to_py)?))
    }

    /// `A ∝ A/I` for the ideal generated by `gens`, or `A ∝ A` without them.
    #[pyo3(signature = (gens=None))]
    fn trivial_extension(&self, gens: Option<Gens>) -> PyResult<Self> {
        let module = match gens {
            None => ModuleTable::regular(&self.inner),
            Some(g) => {
                let ids = self.resolve(g)?;
                ModuleTable::quotient(&self.inner, &self.inner.generate_ideal(&ids))
            }
        }
        .map_err(to_py)?;
        Ok(Self::wrap(build_trivial_extension(&self.inner, &module).map_err(to_py)?))
    }

    fn quotient(&self, ideal: &PyIdeal) -> PyResult<Self> {
        let (q, _) = build_quotient(&self.inner, self.own(ideal)?).map_err(to_py)?;
        Ok(Self::wrap(q))
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn is_local(&self) -> bool {
        self.inner.is_local()
    }

    fn is_field(&self) -> bool {
        self.inner.is_field()
    }

    fn label(&self, x: usize) -> PyResult<String> {
        if x >= self.inner.size() {
            return Err(PyValueError::new_err(format!("no element with id {x}")));
        }
        Ok(self.inner.label(x))
    }

    fn labels(&self) -> Vec<String> {
        self.inner.elements().map(|x| self.inner.label(x)).collect()
    }

    fn element(&self, expr: &str) -> PyResult<usize> {
        parse_element(&self.inner, expr).map_err(to_py)
    }

    fn units(&self) -> Vec<usize> {
        self.inner.units()
    }

    fn ideal(&self, gens: Gens) -> PyResult<PyIdeal> {
        let ids = self.resolve(gens)?;
        Ok(self.ideal_of(self.inner.generate_ideal(&ids)))
    }

    fn named_ideal(&self, name: &str) -> PyResult<PyIdeal> {
        self.named
            .get(name)
            .map(|i| self.ideal_of(i.clone()))
            .ok_or_else(|| to_py(Error::UnknownName(name.to_string())))
    }

    fn named_ideals(&self) -> Vec<String> {
        self.named.keys().cloned().collect()
    }

    fn zero_ideal(&self) -> PyIdeal {
        self.ideal_of(self.inner.zero_ideal())
    }

    fn unit_ideal(&self) -> PyIdeal {
        self.ideal_of(self.inner.unit_ideal())
    }

    fn ideals(&self) -> PyResult<Vec<PyIdeal>> {
        Ok(self.wrap_all(self.inner.all_ideals().map_err(to_py)?.to_vec()))
    }

    fn proper_ideals(&self) -> PyResult<Vec<PyIdeal>> {
        Ok(self.wrap_all(self.inner.proper_ideals().map_err(to_py)?))
    }

    fn maximal_ideals(&self) -> Vec<PyIdeal> {
        self.wrap_all(self.inner.maximal_ideals().to_vec())
    }

    fn nilradical(&self) -> PyIdeal {
        self.ideal_of(self.inner.nilradical())
    }

    fn is_prime(&self, ideal: &PyIdeal) -> PyResult<bool> {
        self.inner.is_prime(self.own(ideal)?).map_err(to_py)
    }

    /// Brute-force n-OA test; the witness is the least violating tuple as labels.
    fn is_n_oa(&self, ideal: &PyIdeal, n: usize) -> PyResult<(bool, Option<Vec<String>>)> {
        let (ok, w) = classify::is_n_oa(&self.inner, self.own(ideal)?, n).map_err(to_py)?;
        Ok((ok, w.map(|t| t.iter().map(|&x| self.inner.label(x)).collect())))
    }

    fn is_n_oa_fast(&self, ideal: &PyIdeal, n: usize) -> PyResult<bool> {
        classify::is_n_oa_fast(&self.inner, self.own(ideal)?, n).map_err(to_py)
    }

    fn classify_ideal<'py>(&self, py: Python<'py>, ideal: &PyIdeal, n: usize) -> PyResult<Bound<'py, PyDict>> {
        let rep = classify::classify_ideal(&self.inner, self.own(ideal)?, n).map_err(to_py)?;
        let labels = |t: Option<Vec<usize>>| {
            t.map(|t| t.iter().map(|&x| self.inner.label(x)).collect::<Vec<_>>())
        };
        let d = PyDict::new(py);
        d.set_item("ideal", self.inner.ideal_name(&rep.ideal))?;
        d.set_item("n", rep.n)?;
        d.set_item("is_prime", rep.is_prime)?;
        d.set_item("is_n_absorbing", rep.is_n_absorbing)?;
        d.set_item("is_n_oa", rep.is_n_oa)?;
        d.set_item("oa_witness", labels(rep.oa_witness))?;
        d.set_item("absorbing_witness", labels(rep.absorbing_witness))?;
        Ok(d)
    }

    fn is_n_oaf(&self, n: usize) -> PyResult<(bool, Option<PyIdeal>)> {
        Ok(self.verdict(factorize::is_n_oaf(&self.inner, n).map_err(to_py)?))
    }

    fn is_general_zpi(&self) -> PyResult<(bool, Option<PyIdeal>)> {
        Ok(self.verdict(factorize::is_general_zpi(&self.inner).map_err(to_py)?))
    }

    fn oaf_dim(&self, n_max: usize) -> PyResult<Option<usize>> {
        factorize::oaf_dim(&self.inner, n_max).map_err(to_py)
    }

    /// Factors into n-OA ideals, or into primes when `n` is omitted.
    #[pyo3(signature = (ideal, n=None))]
    fn factor(&self, ideal: &PyIdeal, n: Option<usize>) -> PyResult<Option<Vec<PyIdeal>>> {
        let class = match n {
            None => FactorClass::Prime,
            Some(0) => return Err(to_py(Error::InvalidArgument("n must be a positive integer".into()))),
            Some(n) => FactorClass::NOa(n),
        };
        let cert = factorize::find_factorization(&self.inner, self.own(ideal)?, class).map_err(to_py)?;
        Ok(cert.map(|c| self.wrap_all(c.factors)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring(size={}, local={}, maximal_ideals={})",
            self.inner.size(),
            self.inner.is_local(),
            self.inner.maximal_ideals().len()
        )
    }
}

#[pymethods]
impl PyIdeal {
    #[getter]
    fn name(&self) -> String {
        self.ring.ideal_name(&self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn elements(&self) -> Vec<usize> {
        self.inner.elements().collect()
    }

    fn generators(&self) -> Vec<String> {
        self.ring
            .generators(&self.inner)
            .iter()
            .map(|&x| self.ring.label(x))
            .collect()
    }

    fn __contains__(&self, x: usize) -> bool {
        x < self.ring.size() && self.inner.contains(x)
    }

    fn is_proper(&self) -> bool {
        self.ring.is_proper(&self.inner)
    }

    fn is_subset(&self, other: &PyIdeal) -> PyResult<bool> {
        self.same(other)?;
        Ok(self.inner.is_subset(&other.inner))
    }

    fn __mul__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        self.same(other)?;
        let p = self.ring.ideal_product(&self.inner, &other.inner).map_err(to_py)?;
        Ok(self.sibling(p))
    }

    fn __add__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        self.same(other)?;
        let s = self.ring.ideal_sum(&self.inner, &other.inner).map_err(to_py)?;
        Ok(self.sibling(s))
    }

    fn __pow__(&self, k: u32, _modulo: Option<usize>) -> PyResult<PyIdeal> {
        let p = self.ring.ideal_power(&self.inner, k).map_err(to_py)?;
        Ok(self.sibling(p))
    }

    fn __eq__(&self, other: &PyIdeal) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Ideal{}", self.name())
    }
}

impl PyIdeal {
    fn same(&self, other: &PyIdeal) -> PyResult<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(to_py(Error::RingMismatch))
        }
    }

    fn sibling(&self, inner: Ideal) -> PyIdeal {
        PyIdeal {
            ring: Arc::clone(&self.ring),
            inner,
        }
    }
}

/// Runs the default corpus and returns one dict per check result.
#[pyfunction]
#[pyo3(signature = (max_n=4))]
fn verify(py: Python<'_>, max_n: usize) -> PyResult<Py<PyAny>> {
    if max_n == 0 {
        return Err(to_py(Error::InvalidArgument("max_n must be at least 1".into())));
    }
    let results = run_corpus(&default_corpus(), 1..=max_n, Limits::default());
    let text = serde_json::to_string(&results).map_err(|e| RinglabError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyfunction]
fn corpus_names() -> Vec<String> {
    default_corpus().into_iter().map(|e| e.name).collect()
}

#[pymodule]
#[pyo3(name = "ringlab")]
fn ringlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add("RinglabError", m.py().get_type::<RinglabError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
