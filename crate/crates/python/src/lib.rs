//! Python bindings: lattices, isometries, surface models, Milnor lattices
//! and the complete-vanishing-lattice check.

use std::sync::Arc;

use latmon_core as core;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use core::surface::{find_fibre_splitting_roots, find_k3_extra_classes, find_multiple_fibre_span};
use core::vanishing::CvlBounds;
use core::{IntMatrix, LatticeError, LatticeVector, SearchBounds, StandardKind};

fn err(e: LatticeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vector(coords: Vec<BigInt>) -> LatticeVector {
    LatticeVector::new(coords)
}

fn coords(v: &LatticeVector) -> Vec<BigInt> {
    v.coords().to_vec()
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(rows).ok_or_else(|| PyValueError::new_err("rows have different lengths"))
}

#[pyclass(name = "Lattice", module = "latmon", frozen)]
struct Lattice {
    inner: Arc<core::Lattice>,
}

#[pymethods]
impl Lattice {
    #[new]
    #[pyo3(signature = (gram, labels = None))]
    fn new(gram: Vec<Vec<BigInt>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let mut l = core::Lattice::new(matrix(gram)?).map_err(err)?;
        if let Some(labels) = labels {
            l = l.with_labels(labels).map_err(err)?;
        }
        Ok(Lattice { inner: Arc::new(l) })
    }

    /// `kind` is one of "U", "A", "D", "E"; `n` is the index for A/D/E.
    #[staticmethod]
    #[pyo3(signature = (kind, n = 0, scale = 1))]
    fn standard(kind: &str, n: usize, scale: i64) -> PyResult<Self> {
        let kind = match kind {
            "U" => StandardKind::U,
            "A" => StandardKind::A(n),
            "D" => StandardKind::D(n),
            "E" => StandardKind::E(n),
            other => return Err(PyValueError::new_err(format!("unknown lattice kind {other:?}"))),
        };
        Ok(Lattice { inner: Arc::new(core::Lattice::standard(&kind, scale).map_err(err)?) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Lattice { inner: Arc::new(core::io::lattice_from_json(text).map_err(err)?) })
    }

    fn to_json(&self) -> String {
        core::io::lattice_to_json(&self.inner)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn gram(&self) -> Vec<Vec<BigInt>> {
        self.inner.gram().to_rows()
    }

    fn labels(&self) -> Option<Vec<String>> {
        self.inner.labels().map(<[String]>::to_vec)
    }

    /// `(positive, negative, zero)`.
    fn signature(&self) -> (usize, usize, usize) {
        let s = self.inner.signature();
        (s.positive, s.negative, s.zero)
    }

    fn determinant(&self) -> BigInt {
        self.inner.determinant()
    }

    fn invariant_factors(&self) -> Vec<BigInt> {
        self.inner.discriminant().invariant_factors
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn is_unimodular(&self) -> bool {
        self.inner.is_unimodular()
    }

    fn is_definite(&self) -> bool {
        self.inner.is_definite()
    }

    fn inner_product(&self, v: Vec<BigInt>, w: Vec<BigInt>) -> PyResult<BigInt> {
        self.inner.inner_product(&vector(v), &vector(w)).map_err(err)
    }

    fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { inner: Arc::new(self.inner.direct_sum(&other.inner)) }
    }

    /// Vectors of the given square with coordinates bounded by `height`.
    #[pyo3(signature = (square = -2, height = 3))]
    fn roots(&self, square: i64, height: u64) -> PyResult<Vec<Vec<BigInt>>> {
        let rs = self.inner.enumerate_roots(&BigInt::from(square), height).map_err(err)?;
        Ok(rs.iter().map(coords).collect())
    }

    /// Basis (ambient coordinates) of the saturated orthogonal complement.
    fn orthogonal_complement(&self, vectors: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
        let vs: Vec<LatticeVector> = vectors.into_iter().map(vector).collect();
        let sub = self.inner.orthogonal_complement(&vs).map_err(err)?;
        Ok(sub.generators().iter().map(coords).collect())
    }

    fn radical_basis(&self) -> Vec<Vec<BigInt>> {
        self.inner.radical_basis().iter().map(coords).collect()
    }

    fn __repr__(&self) -> String {
        let s = self.inner.signature();
        format!("Lattice(rank={}, signature=({},{},{}), det={})", self.inner.rank(), s.positive, s.negative, s.zero, self.inner.determinant())
    }
}

#[pyclass(name = "Isometry", module = "latmon", frozen)]
struct Isometry {
    inner: core::Isometry,
}

#[pymethods]
impl Isometry {
    #[new]
    fn new(lattice: &Lattice, matrix_rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        Ok(Isometry { inner: core::Isometry::new(Arc::clone(&lattice.inner), matrix(matrix_rows)?).map_err(err)? })
    }

    #[staticmethod]
    fn identity(lattice: &Lattice) -> Self {
        Isometry { inner: core::Isometry::identity(Arc::clone(&lattice.inner)) }
    }

    #[staticmethod]
    fn reflection(lattice: &Lattice, v: Vec<BigInt>) -> PyResult<Self> {
        Ok(Isometry { inner: core::Isometry::reflection(&lattice.inner, &vector(v)).map_err(err)? })
    }

    fn matrix(&self) -> Vec<Vec<BigInt>> {
        self.inner.matrix().to_rows()
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Isometry) -> PyResult<Isometry> {
        Ok(Isometry { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn inverse(&self) -> Isometry {
        Isometry { inner: self.inner.inverse() }
    }

    fn apply(&self, v: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
        Ok(coords(&self.inner.apply(&vector(v)).map_err(err)?))
    }

    /// Real spinor norm as `+1` or `-1`.
    fn spinor_norm(&self) -> i8 {
        self.inner.real_spinor_norm().value()
    }

    fn fixes(&self, k: Vec<BigInt>) -> PyResult<bool> {
        self.inner.fixes(&vector(k)).map_err(err)
    }

    fn is_in_o_prime_k(&self, k: Vec<BigInt>) -> PyResult<bool> {
        self.inner.is_in_o_prime_k(&vector(k)).map_err(err)
    }

    fn __eq__(&self, other: &Isometry) -> bool {
        self.inner == other.inner
    }
}

/// Milnor lattice of `x^a + y^b + z^c`.
#[pyfunction]
fn milnor_lattice(a: u64, b: u64, c: u64) -> PyResult<Lattice> {
    let s = core::BPSingularity::new(&[a, b, c]).map_err(err)?;
    Ok(Lattice { inner: Arc::new(core::milnor_lattice(&s)) })
}

/// The model of `H₂(X)` with its named classes, as a dict.
#[pyfunction]
#[pyo3(signature = (pg, multiplicities = Vec::new()))]
fn surface_model<'py>(py: Python<'py>, pg: u64, multiplicities: Vec<u64>) -> PyResult<Bound<'py, PyDict>> {
    let s = core::build_surface_model(pg, &multiplicities).map_err(err)?;
    let fc = core::fibre_complement(&s).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("lattice", Lattice { inner: Arc::clone(&s.lattice) })?;
    d.set_item("l_prime", Lattice { inner: Arc::new(fc.l_prime.lattice.clone()) })?;
    d.set_item("pg", s.pg)?;
    d.set_item("q", s.q)?;
    d.set_item("chi", s.chi)?;
    d.set_item("m", s.m)?;
    d.set_item("e", coords(&s.e))?;
    d.set_item("f", coords(&s.f))?;
    d.set_item("k", coords(&s.k))?;
    d.set_item("k_scalar", s.k_scalar.clone())?;
    d.set_item("sigma", s.sigma.as_ref().map(coords))?;
    let fibres: Vec<(u64, Vec<BigInt>)> = s.fibres.iter().map(|fi| (fi.multiplicity, coords(&fi.class))).collect();
    d.set_item("fibres", fibres)?;
    d.set_item("odd_plane", s.odd_plane)?;
    Ok(d)
}

/// Witness searches on a surface model: splitting roots, multiple-fibre
/// spans and (for K3) the extra classes.
#[pyfunction]
#[pyo3(signature = (pg, multiplicities = Vec::new(), height = 3, max_support = 3))]
fn surface_witnesses<'py>(py: Python<'py>, pg: u64, multiplicities: Vec<u64>, height: u64, max_support: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = core::build_surface_model(pg, &multiplicities).map_err(err)?;
    let b = SearchBounds { height, max_support };
    let d = PyDict::new(py);
    d.set_item("splitting", find_fibre_splitting_roots(&s, b).map(|(a, ap)| (coords(&a), coords(&ap))))?;
    let spans = PyDict::new(py);
    for mi in s.multiplicities() {
        spans.set_item(mi, find_multiple_fibre_span(&s, mi, b).map_err(err)?.map(|(a, ap)| (coords(&a), coords(&ap))))?;
    }
    d.set_item("fibre_spans", spans)?;
    if s.is_k3() {
        let w = find_k3_extra_classes(&s, b).map_err(err)?;
        d.set_item("k3_extras", w.map(|w| (coords(&w.alpha), coords(&w.alpha_prime), coords(&w.sigma))))?;
    }
    Ok(d)
}

/// The three complete-vanishing-lattice conditions for `roots` in `lattice`.
#[pyfunction]
#[pyo3(signature = (lattice, roots, pattern = None, orbit_bound = core::vanishing::DEFAULT_ORBIT_BOUND, tuple_bound = None))]
fn cvl_check<'py>(
    py: Python<'py>,
    lattice: &Lattice,
    roots: Vec<Vec<BigInt>>,
    pattern: Option<[[i64; 6]; 6]>,
    orbit_bound: usize,
    tuple_bound: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let pattern = match pattern {
        Some(p) => core::DiagramPattern::new(p).map_err(err)?,
        None => core::DiagramPattern::default_pattern(),
    };
    let set = core::VanishingSet::new(Arc::clone(&lattice.inner), roots.into_iter().map(vector).collect()).map_err(err)?;
    let bounds = CvlBounds { seed: 0, orbit_max_new: orbit_bound, tuple_bound };
    let r = core::is_complete_vanishing_lattice(&lattice.inner, &set, &pattern, bounds).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("generates", r.generates)?;
    d.set_item("orbit", r.orbit.to_string())?;
    d.set_item("diagram", r.diagram.label())?;
    d.set_item("witness", r.diagram.witness().map(|w| w.to_vec()))?;
    d.set_item("complete", r.is_certified_complete())?;
    d.set_item("verdict", r.verdict_line())?;
    Ok(d)
}

/// Order of the group generated by reflections in `roots` (definite span).
#[pyfunction]
fn reflection_group_order(lattice: &Lattice, roots: Vec<Vec<BigInt>>) -> PyResult<u128> {
    let set = core::VanishingSet::new(Arc::clone(&lattice.inner), roots.into_iter().map(vector).collect()).map_err(err)?;
    set.reflection_group_order_by_stabilizers().map_err(err)
}

/// Number of isometries of a definite lattice of rank at most 8.
#[pyfunction]
fn orthogonal_group_order(lattice: &Lattice) -> PyResult<usize> {
    Ok(core::enumerate_orthogonal_group(&lattice.inner).map_err(err)?.len())
}

#[pymodule]
fn latmon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lattice>()?;
    m.add_class::<Isometry>()?;
    m.add_function(wrap_pyfunction!(milnor_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(surface_model, m)?)?;
    m.add_function(wrap_pyfunction!(surface_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(cvl_check, m)?)?;
    m.add_function(wrap_pyfunction!(reflection_group_order, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonal_group_order, m)?)?;
    Ok(())
}
