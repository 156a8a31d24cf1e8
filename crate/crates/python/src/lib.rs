//! Python module `zeta_towers`.
//!
//! Exact values cross the boundary as Python `int` and `fractions.Fraction`;
//! cyclotomic numbers as lists of fractions in the power basis of `ζ`.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use zeta_towers::algebra::{CycloNum, GroupRingElem, Rational, UniPoly};
use zeta_towers::tower::Ramification;
use zeta_towers::{datum_file, equivariant, iwasawa, lfunctions, Error};

create_exception!(zeta_towers, ZetaTowersError, PyException);
create_exception!(zeta_towers, ValidationError, ZetaTowersError);
create_exception!(zeta_towers, HypothesisError, ZetaTowersError);
create_exception!(zeta_towers, CertificationError, ZetaTowersError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.exit_code() {
        1 => ValidationError::new_err(msg),
        2 => HypothesisError::new_err(msg),
        _ => CertificationError::new_err(msg),
    }
}

fn int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

fn ints<'py, T: ToString>(py: Python<'py>, xs: &[T]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| int(py, x.to_string())).collect()
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let num = int(py, q.numer().to_string())?;
    let den = int(py, q.denom().to_string())?;
    py.import("fractions")?.getattr("Fraction")?.call1((num, den))
}

fn fractions<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Bound<'py, PyList>> {
    let items = qs.iter().map(|q| fraction(py, q)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn rational_poly<'py>(py: Python<'py>, p: &UniPoly<Rational>) -> PyResult<Bound<'py, PyList>> {
    fractions(py, p.coeffs())
}

fn cyclo<'py>(py: Python<'py>, c: &CycloNum) -> PyResult<Bound<'py, PyList>> {
    fractions(py, c.coeffs())
}

fn cyclo_poly<'py>(py: Python<'py>, p: &UniPoly<CycloNum>) -> PyResult<Bound<'py, PyList>> {
    let items = p.coeffs().iter().map(|c| cyclo(py, c)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn group_poly<'py>(py: Python<'py>, p: &UniPoly<GroupRingElem>) -> PyResult<Bound<'py, PyList>> {
    let items = p.coeffs().iter().map(|c| fractions(py, c.coeffs())).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// A branched `Z_p`-tower datum: base graph, prime, voltages, ramification.
#[pyclass(frozen, module = "zeta_towers")]
struct TowerDatum {
    inner: zeta_towers::tower::TowerDatum,
}

#[pymethods]
impl TowerDatum {
    /// `edges` are `(from, to, voltage)`; `ramification` maps every vertex to
    /// `k >= 0` or `"unramified"`.
    #[new]
    fn new(
        prime: u64,
        vertices: Vec<String>,
        edges: Vec<(String, String, i64)>,
        ramification: &Bound<'_, PyDict>,
    ) -> PyResult<Self> {
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| ValidationError::new_err(format!("unknown vertex {name:?}")))
        };
        let mut darts = Vec::with_capacity(edges.len());
        for (a, b, v) in &edges {
            darts.push((index(a)?, index(b)?, (*v).into()));
        }
        let mut ram = Vec::with_capacity(vertices.len());
        for name in &vertices {
            let value = ramification
                .get_item(name)?
                .ok_or_else(|| ValidationError::new_err(format!("no ramification entry for {name:?}")))?;
            ram.push(if let Ok(k) = value.extract::<u32>() {
                Ramification::Ramified(k)
            } else if value.extract::<String>().is_ok_and(|s| s == "unramified") {
                Ramification::Unramified
            } else {
                return Err(ValidationError::new_err(format!(
                    "{name:?}: expected an integer >= 0 or \"unramified\""
                )));
            });
        }
        let inner = zeta_towers::tower::TowerDatum::from_edges(vertices, prime, &darts, ram).map_err(to_py)?;
        Ok(TowerDatum { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(TowerDatum {
            inner: datum_file::parse_datum(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(TowerDatum {
            inner: datum_file::read_datum(&path).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        datum_file::serialize_datum(&self.inner)
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.prime()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.base().vertex_names().to_vec()
    }

    #[getter]
    fn n1(&self) -> u32 {
        self.inner.n1()
    }

    fn euler_characteristic(&self, level: u32) -> i64 {
        self.inner.euler_characteristic(level)
    }

    /// `h(u)`, `chi` and `kappa` of the level graph.
    fn zeta<'py>(&self, py: Python<'py>, level: u32) -> PyResult<Bound<'py, PyDict>> {
        let graph = self.inner.build_level_graph(level).into_graph();
        let (h, chi) = graph.ihara_zeta_reciprocal();
        let kappa = graph.spanning_tree_count().map_err(|_| to_py(Error::LevelDisconnected(level)))?;
        let out = PyDict::new(py);
        out.set_item("vertices", graph.num_vertices())?;
        out.set_item("edges", graph.num_edges())?;
        out.set_item("chi", chi)?;
        out.set_item("kappa", int(py, kappa.to_string())?)?;
        out.set_item("h", rational_poly(py, &h)?)?;
        Ok(out)
    }

    /// One dict per character `psi_a`, in order of `a`.
    fn lfunctions<'py>(&self, py: Python<'py>, level: u32) -> PyResult<Bound<'py, PyList>> {
        let rows = lfunctions::lfunction_table(&self.inner, level)
            .iter()
            .map(|row| {
                let sv = lfunctions::special_values(&self.inner, level, &row.character);
                let d = PyDict::new(py);
                d.set_item("a", row.character.exponent())?;
                d.set_item("order", row.character.order())?;
                d.set_item("r0", row.r0)?;
                d.set_item("chi", row.chi)?;
                d.set_item("c_exponent", row.c_exponent())?;
                d.set_item("h", cyclo_poly(py, &row.h)?)?;
                d.set_item("h_at_1", cyclo(py, &sv.h_at_1)?)?;
                Ok(d)
            })
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    /// Coefficients of `u^k` in the equivariant zeta polynomial, each a list
    /// of group-ring coefficients indexed by `Z/p^n`.
    fn eta<'py>(&self, py: Python<'py>, level: u32) -> PyResult<Bound<'py, PyList>> {
        group_poly(py, &equivariant::eta_poly(&self.inner, level).map_err(to_py)?)
    }

    fn equivariant_euler_characteristic<'py>(&self, py: Python<'py>, level: u32) -> PyResult<Bound<'py, PyList>> {
        fractions(py, equivariant::equivariant_euler_char(&self.inner, level).coeffs())
    }

    fn product_formula_holds(&self, level: u32) -> PyResult<bool> {
        Ok(lfunctions::product_formula_check(&self.inner, level).map_err(to_py)?.holds())
    }

    #[pyo3(signature = (max_level=None))]
    fn tower<'py>(&self, py: Python<'py>, max_level: Option<u32>) -> PyResult<Bound<'py, PyList>> {
        let n_max = max_level.unwrap_or_else(|| iwasawa::default_max_level(self.inner.prime()));
        let rows = iwasawa::tower_sweep(&self.inner, n_max)
            .map_err(to_py)?
            .into_iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("n", r.n)?;
                d.set_item("vertices", r.vertices)?;
                d.set_item("edges", r.edges)?;
                d.set_item("chi", r.chi)?;
                d.set_item("kappa", int(py, r.kappa.to_string())?)?;
                d.set_item("ord", r.ord)?;
                Ok(d)
            })
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    /// Closed-form invariants certified against a sweep; raises
    /// `CertificationError` when the sweep does not confirm them.
    #[pyo3(signature = (max_level=None))]
    fn invariants<'py>(&self, py: Python<'py>, max_level: Option<u32>) -> PyResult<Bound<'py, PyDict>> {
        let n_max = max_level.unwrap_or_else(|| iwasawa::default_max_level(self.inner.prime()));
        let report = iwasawa::certify(&self.inner, n_max).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("mu", report.fitted.mu)?;
        d.set_item("lambda", report.fitted.lambda)?;
        d.set_item("nu", report.fitted.nu)?;
        d.set_item("n0", report.fitted.n0)?;
        d.set_item("lambda_j", report.closed_form.components.lambda_j.clone())?;
        d.set_item("lambda_0", report.closed_form.components.lambda0)?;
        d.set_item("lambda_unr", report.closed_form.components.lambda_unr)?;
        d.set_item("g", ints(py, report.g.poly.coeffs())?)?;
        d.set_item("f", ints(py, report.char_ideal.f.coeffs())?)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "TowerDatum(prime={}, vertices={}, edges={})",
            self.inner.prime(),
            self.inner.base().num_vertices(),
            self.inner.base().num_edges()
        )
    }
}

/// `(mu, lambda)` of an integer coefficient list, or `None` if all vanish.
#[pyfunction]
fn mu_lambda(coeffs: Vec<i64>, p: u64) -> Option<(u64, usize)> {
    let big: Vec<_> = coeffs.into_iter().map(Into::into).collect();
    iwasawa::mu_lambda(&big, p)
}

#[pymodule]
#[pyo3(name = "zeta_towers")]
fn zeta_towers_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<TowerDatum>()?;
    m.add_function(wrap_pyfunction!(mu_lambda, m)?)?;
    m.add("ZetaTowersError", py.get_type::<ZetaTowersError>())?;
    m.add("ValidationError", py.get_type::<ValidationError>())?;
    m.add("HypothesisError", py.get_type::<HypothesisError>())?;
    m.add("CertificationError", py.get_type::<CertificationError>())?;
    Ok(())
}
