use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use defspace::chevalley::{
    adjoint_invariants_sc, coadjoint_invariants_sc, nilradical_dual_invariants, LeviGenerators,
};
use defspace::components::{
    cgroup_component_group, component_count, dim_formulas, lgroup_datum, mu_group, GaloisExtDesc,
    GaloisExtJson,
};
use defspace::extensions::{build_extension, extension_to_cocycle, CocycleJson, GenTwoCocycle};
use defspace::galois::{cohomology, special_level, validate_tame_rep, LocalFieldDesc, TameRepJson};
use defspace::lattice::{LatticeJson, LatticeWithAction};
use defspace::levi::{enumerate_standard_levis, has_codim2_levi, split_codim2};
use defspace::root_datum::{parse_type, DatumJson, GenReductiveDatum};
use defspace::semisimplify::{
    brauer_nesbitt_equal, is_absolutely_irreducible, semisimplify as ss, FqMatrixRep, RepJson,
};

create_exception!(defspace_py, DefspaceError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    DefspaceError::new_err(e.to_string())
}

/// Converts through JSON so nested results arrive as plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> PyResult<T> {
    serde_json::from_str(text)
        .map_err(|e| err(format!("line {}, column {}: {e}", e.line(), e.column())))
}

#[pyclass(name = "RootDatum", module = "defspace_py", frozen)]
struct PyRootDatum {
    inner: GenReductiveDatum,
}

#[pymethods]
impl PyRootDatum {
    /// Builds a connected datum from a type string such as `"GL3"` or `"PGL2xGL1"`.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyRootDatum {
            inner: GenReductiveDatum::connected(parse_type(name).map_err(err)?),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: DatumJson = from_json(text)?;
        Ok(PyRootDatum {
            inner: j.to_datum().map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&DatumJson::from_datum(&self.inner)).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.base().label().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.base().rank_x()
    }

    #[getter]
    fn semisimple_rank(&self) -> usize {
        self.inner.base().semisimple_rank()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim_g()
    }

    #[getter]
    fn dim_centre(&self) -> usize {
        self.inner.dim_z()
    }

    fn pi1(&self) -> Vec<i64> {
        self.inner.base().pi1_derived()
    }

    fn is_pi1_etale(&self, p: u64) -> bool {
        self.inner.base().is_pi1_etale(p)
    }

    fn etale_cover(&self, p: u64) -> Self {
        PyRootDatum {
            inner: GenReductiveDatum::connected(self.inner.base().etale_pi1_cover(p)),
        }
    }

    fn dual(&self) -> Self {
        PyRootDatum {
            inner: self.inner.dual(),
        }
    }

    fn is_isomorphic(&self, other: &PyRootDatum) -> bool {
        self.inner
            .base()
            .isomorphism_witness(other.inner.base())
            .is_some()
    }

    fn levis(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &enumerate_standard_levis(&self.inner))
    }

    /// The Δ-stable codimension-2 Levi and the split of the adjoint quotient, or `None`.
    fn codim2_split(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        let Some(levi) = has_codim2_levi(&self.inner) else {
            return Ok(None);
        };
        let split = split_codim2(&self.inner, &levi).map_err(err)?;
        let v = serde_json::json!({ "subset": levi.subset, "g1": split.g1.label(), "beta": split.beta, "checked": split.checked });
        to_py(py, &v).map(Some)
    }

    fn coadjoint_invariants(&self, p: u32) -> PyResult<usize> {
        Ok(coadjoint_invariants_sc(self.inner.base(), p)
            .map_err(err)?
            .dim)
    }

    fn adjoint_invariants(&self, p: u32) -> PyResult<usize> {
        Ok(adjoint_invariants_sc(self.inner.base(), p)
            .map_err(err)?
            .dim)
    }

    /// Invariant dimension of `(Lie U)*` for each proper standard Levi, keyed by its simple roots.
    fn nilradical_invariants(&self, p: u32) -> PyResult<Vec<(Vec<usize>, usize)>> {
        let mut out = Vec::new();
        for levi in enumerate_standard_levis(&self.inner)
            .into_iter()
            .filter(|l| !l.is_whole_group())
        {
            let dim = nilradical_dual_invariants(&self.inner, &levi, p, &LeviGenerators::Full)
                .map_err(err)?
                .dim;
            out.push((levi.subset, dim));
        }
        Ok(out)
    }

    fn dim_formulas(&self, py: Python<'_>, d_f: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &dim_formulas(&self.inner, d_f))
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({:?})", self.inner.base().label())
    }
}

#[pyclass(name = "LocalField", module = "defspace_py", frozen)]
struct PyLocalField {
    inner: LocalFieldDesc,
}

#[pymethods]
impl PyLocalField {
    #[new]
    #[pyo3(signature = (p, f=1, e=1, m=None, c_sigma=None, c_tau=None))]
    fn new(
        p: u32,
        f: u32,
        e: u32,
        m: Option<u32>,
        c_sigma: Option<u32>,
        c_tau: Option<u32>,
    ) -> PyResult<Self> {
        Ok(PyLocalField {
            inner: LocalFieldDesc::with_options(p, f, e, m, c_sigma, c_tau).map_err(err)?,
        })
    }

    /// `Q_p(ζ_{p^k})`.
    #[staticmethod]
    fn cyclotomic(p: u32, k: u32) -> PyResult<Self> {
        Ok(PyLocalField {
            inner: LocalFieldDesc::cyclotomic(p, k).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m
    }

    fn has_zeta_p(&self) -> bool {
        self.inner.has_zeta_p()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        let d = &self.inner;
        format!("LocalField(p={}, f={}, e={}, m={})", d.p, d.f, d.e, d.m)
    }
}

/// `h⁰, h¹, h², z¹` of a tame representation given as JSON (`field`, `sigma`, `tau`).
#[pyfunction]
fn galois_cohomology(py: Python<'_>, field: &PyLocalField, rep: &str) -> PyResult<Py<PyAny>> {
    let rep = defspace::galois::TameRep::from_json(&from_json::<TameRepJson>(rep)?).map_err(err)?;
    validate_tame_rep(&field.inner, &rep).map_err(err)?;
    to_py(py, &cohomology(&field.inner, &rep).map_err(err)?)
}

/// `h⁰` of the twist of `W`.
#[pyfunction]
fn galois_special_level(field: &PyLocalField, rep: &str) -> PyResult<usize> {
    let rep = defspace::galois::TameRep::from_json(&from_json::<TameRepJson>(rep)?).map_err(err)?;
    special_level(&field.inner, &rep).map_err(err)
}

#[pyclass(name = "GaloisExt", module = "defspace_py", frozen)]
struct PyGaloisExt {
    inner: GaloisExtDesc,
}

#[pymethods]
impl PyGaloisExt {
    /// The trivial extension of `field`.
    #[new]
    fn new(field: &PyLocalField) -> Self {
        PyGaloisExt {
            inner: GaloisExtDesc::trivial(field.inner),
        }
    }

    #[staticmethod]
    fn cyclotomic(p: u32, k: u32) -> PyResult<Self> {
        Ok(PyGaloisExt {
            inner: GaloisExtDesc::cyclotomic(p, k).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGaloisExt {
            inner: GaloisExtDesc::from_json(from_json::<GaloisExtJson>(text)?).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.group().order()
    }

    /// Invariant factors of `μ` for a torus quotient lattice given as JSON.
    fn mu_group(&self, lattice: &str) -> PyResult<Vec<i64>> {
        let m = LatticeWithAction::from_json(from_json::<LatticeJson>(lattice)?).map_err(err)?;
        mu_group(&self.inner, &m.m2()).map_err(err)
    }

    /// Component count for the torus quotient of `datum`.
    #[pyo3(signature = (datum, semidirect=false))]
    fn component_count(
        &self,
        py: Python<'_>,
        datum: &PyRootDatum,
        semidirect: bool,
    ) -> PyResult<Py<PyAny>> {
        let m = datum.inner.torus_quotient_lattice();
        let etale = datum.inner.base().is_pi1_etale(self.inner.base().p as u64);
        to_py(
            py,
            &component_count(&self.inner, &m.m2(), etale, semidirect).map_err(err)?,
        )
    }

    fn lgroup(&self, datum: &PyRootDatum) -> PyResult<PyRootDatum> {
        Ok(PyRootDatum {
            inner: lgroup_datum(&datum.inner, &self.inner).map_err(err)?,
        })
    }

    fn cgroup_components(&self, py: Python<'_>, datum: &PyRootDatum) -> PyResult<Py<PyAny>> {
        to_py(
            py,
            &cgroup_component_group(&datum.inner, &self.inner).map_err(err)?,
        )
    }
}

fn cocycle(text: &str) -> PyResult<GenTwoCocycle> {
    GenTwoCocycle::from_json(from_json::<CocycleJson>(text)?).map_err(err)
}

/// Multiplication table of the extension built from a cocycle JSON.
#[pyfunction]
fn build_group(py: Python<'_>, cocycle_json: &str) -> PyResult<Py<PyAny>> {
    let e = build_extension(&cocycle(cocycle_json)?).map_err(err)?;
    let g = &e.group;
    to_py(
        py,
        &serde_json::json!({ "order": g.order(), "abelian": g.is_abelian(), "table": g.table() }),
    )
}

/// Whether the cocycle is valid and is recovered from its extension.
#[pyfunction]
fn verify_cocycle(cocycle_json: &str) -> PyResult<bool> {
    let z = cocycle(cocycle_json)?;
    Ok(build_extension(&z).and_then(|e| {
        e.check()?;
        extension_to_cocycle(&e)
    }) == Ok(z))
}

/// Semisimplification of a matrix representation given as JSON (`field`, `generators`).
#[pyfunction]
#[pyo3(signature = (rep, maxlen=6))]
fn semisimplify(py: Python<'_>, rep: &str, maxlen: usize) -> PyResult<Py<PyAny>> {
    let rep = FqMatrixRep::from_json(&from_json::<RepJson>(rep)?).map_err(err)?;
    let s = ss(&rep).map_err(err)?;
    let mut irreducible = Vec::new();
    for b in &s.blocks {
        irreducible.push(is_absolutely_irreducible(b).map_err(err)?);
    }
    let bn = brauer_nesbitt_equal(&rep, &s.rep, maxlen).map_err(err)?;
    let v = serde_json::json!({
        "blocks": s.flag.block_sizes(),
        "irreducibility": irreducible,
        "brauer_nesbitt": bn,
        "rep": s.rep.to_json(),
    });
    to_py(py, &v)
}

/// Runs a scenario file's contents and returns the report.
#[pyfunction]
fn run_scenarios(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let file = defspace::scenario::parse_scenarios(text).map_err(err)?;
    to_py(py, &defspace::scenario::run_scenarios(&file))
}

#[pymodule]
fn defspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DefspaceError", m.py().get_type::<DefspaceError>())?;
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyLocalField>()?;
    m.add_class::<PyGaloisExt>()?;
    m.add_function(wrap_pyfunction!(galois_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(galois_special_level, m)?)?;
    m.add_function(wrap_pyfunction!(build_group, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(semisimplify, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenarios, m)?)?;
    Ok(())
}
